//! Named permutation groups and almost simple pairs.
//!
//! Built-in families are constructed directly; the remaining groups are
//! read from generator files (see [`load_generator_file`]). Every
//! construction checks its order by enumeration.
//!
//! The projective line over GF(q) is labelled `1..=q+1`: point `i ≤ q` is
//! the field element with code `i - 1` and point `q + 1` is ∞. Matrices act
//! by Möbius maps `z ↦ (az + b)/(cz + d)`.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::SmallField;
use crate::group::{FiniteGroup, ELEMENT_CAP};
use crate::perm::{Permutation, MAX_DEGREE};
use crate::structure;

/// Environment variable overriding the generator-file directory.
pub const ASSETS_ENV: &str = "NILPROB_ASSETS";

/// Directory holding the shipped generator files.
pub fn assets_dir() -> PathBuf {
    std::env::var_os(ASSETS_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/assets")))
}

/// Resolves a generator-file path: as given if it exists, otherwise relative
/// to [`assets_dir`].
pub fn resolve_asset(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        path.to_path_buf()
    } else {
        assets_dir().join(path)
    }
}

/// A group description in the `kind:parameter` grammar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    /// Dihedral group of order `2n` acting on `n` points.
    Dihedral(usize),
    Psl2(usize),
    Pgl2(usize),
    PGammaL2(usize),
    File(PathBuf),
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("group spec {s:?} is not of the form kind:parameter")))?;
        if kind == "file" {
            return Ok(GroupSpec::File(PathBuf::from(arg)));
        }
        let n: usize = arg
            .parse()
            .map_err(|_| Error::Parse(format!("bad parameter {arg:?} in group spec {s:?}")))?;
        Ok(match kind {
            "sym" => GroupSpec::Symmetric(n),
            "alt" => GroupSpec::Alternating(n),
            "cyc" => GroupSpec::Cyclic(n),
            "dih" => GroupSpec::Dihedral(n),
            "psl2" => GroupSpec::Psl2(n),
            "pgl2" => GroupSpec::Pgl2(n),
            "pgammal2" => GroupSpec::PGammaL2(n),
            _ => return Err(Error::Parse(format!("unknown group kind {kind:?}"))),
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric(n) => write!(f, "sym:{n}"),
            GroupSpec::Alternating(n) => write!(f, "alt:{n}"),
            GroupSpec::Cyclic(n) => write!(f, "cyc:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dih:{n}"),
            GroupSpec::Psl2(q) => write!(f, "psl2:{q}"),
            GroupSpec::Pgl2(q) => write!(f, "pgl2:{q}"),
            GroupSpec::PGammaL2(q) => write!(f, "pgammal2:{q}"),
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

fn check_points(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::UnsupportedParameter(format!("{n} points")));
    }
    Ok(())
}

fn cycle(n: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    Permutation::from_cycles(n, &[points.into_iter().collect()]).expect("valid cycle")
}

/// Enumerates the group and checks it against its theoretical order.
fn finish(group: FiniteGroup, order: Option<u64>) -> Result<FiniteGroup> {
    match order {
        Some(n) if n > ELEMENT_CAP => Err(Error::UnsupportedParameter(format!(
            "{} has order {n}, above the enumeration cap {ELEMENT_CAP}",
            group.name()
        ))),
        Some(n) => {
            let group = group.with_declared_order(n);
            group.elements()?;
            Ok(group)
        }
        None => Err(Error::UnsupportedParameter(format!(
            "{} is too large to enumerate",
            group.name()
        ))),
    }
}

/// Builds the group named by `spec`; file specs give the ambient group.
pub fn build(spec: &GroupSpec) -> Result<FiniteGroup> {
    let name = spec.to_string();
    match *spec {
        GroupSpec::Symmetric(n) => {
            check_points(n)?;
            let gens = if n < 2 {
                vec![]
            } else {
                vec![cycle(n, 1..=n), cycle(n, [1, 2])]
            };
            finish(FiniteGroup::new(n, gens)?.with_name(name), factorial(n))
        }
        GroupSpec::Alternating(n) => {
            check_points(n)?;
            let gens = if n < 3 {
                vec![]
            } else if n % 2 == 1 {
                vec![cycle(n, [1, 2, 3]), cycle(n, 1..=n)]
            } else {
                vec![cycle(n, [1, 2, 3]), cycle(n, 2..=n)]
            };
            let order = factorial(n).map(|f| (f / 2).max(1));
            finish(FiniteGroup::new(n, gens)?.with_name(name), order)
        }
        GroupSpec::Cyclic(n) => {
            check_points(n)?;
            let gens = if n < 2 { vec![] } else { vec![cycle(n, 1..=n)] };
            finish(FiniteGroup::new(n, gens)?.with_name(name), Some(n as u64))
        }
        GroupSpec::Dihedral(n) => {
            if n < 3 {
                return Err(Error::UnsupportedParameter(format!(
                    "dihedral group on {n} points; need at least 3"
                )));
            }
            check_points(n)?;
            let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            let gens = vec![cycle(n, 1..=n), Permutation::from_images(&reflection)?];
            finish(FiniteGroup::new(n, gens)?.with_name(name), Some(2 * n as u64))
        }
        GroupSpec::Psl2(q) => projective_line_group(q, LineGroup::Psl, name),
        GroupSpec::Pgl2(q) => projective_line_group(q, LineGroup::Pgl, name),
        GroupSpec::PGammaL2(q) => projective_line_group(q, LineGroup::PGammaL, name),
        GroupSpec::File(ref path) => {
            let AlmostSimplePair { ambient, socle, .. } = load_generator_file(path)?;
            drop(socle);
            Ok(Arc::try_unwrap(ambient).unwrap_or_else(|a| {
                FiniteGroup::new(a.degree(), a.generators().to_vec())
                    .expect("valid group")
                    .with_name(a.name())
            }))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum LineGroup {
    Psl,
    Pgl,
    PGammaL,
}

/// A Möbius map on the projective line; index `q` is ∞.
fn mobius(f: &SmallField, [a, b, c, d]: [usize; 4]) -> Permutation {
    let q = f.order();
    let images: Vec<usize> = (0..=q)
        .map(|z| {
            let (num, den) = if z == q {
                (a, c)
            } else {
                (f.add(f.mul(a, z), b), f.add(f.mul(c, z), d))
            };
            if den == 0 {
                q
            } else {
                f.mul(num, f.inv(den))
            }
        })
        .collect();
    Permutation::from_images(&images).expect("Möbius maps are bijective")
}

fn frobenius_on_line(f: &SmallField) -> Permutation {
    let q = f.order();
    let images: Vec<usize> = (0..=q).map(|z| if z == q { q } else { f.frobenius(z) }).collect();
    Permutation::from_images(&images).expect("Frobenius is bijective")
}

fn projective_line_group(q: usize, kind: LineGroup, name: String) -> Result<FiniteGroup> {
    if q < 2 || q + 1 > MAX_DEGREE {
        return Err(Error::UnsupportedParameter(format!("q = {q}")));
    }
    let f = SmallField::new(q)?;
    let w = f.primitive_element();
    let one = 1;
    let minus_one = f.neg(one);
    let mut gens = vec![
        mobius(&f, [one, one, 0, one]),
        mobius(&f, [f.mul(w, w), 0, 0, one]),
        mobius(&f, [0, minus_one, one, 0]),
    ];
    let q64 = q as u64;
    let pgl_order = q64 * (q64 * q64 - 1);
    let mut order = if q % 2 == 1 { pgl_order / 2 } else { pgl_order };
    if kind != LineGroup::Psl {
        gens.push(mobius(&f, [w, 0, 0, one]));
        order = pgl_order;
    }
    if kind == LineGroup::PGammaL && f.degree() > 1 {
        gens.push(frobenius_on_line(&f));
        order *= f.degree() as u64;
    }
    finish(FiniteGroup::new(q + 1, gens)?.with_name(name), Some(order))
}

/// A simple group `S` inside a group `A` with `S ≤ A ≤ Aut S`, both as
/// permutation groups on the same points.
#[derive(Clone, Debug)]
pub struct AlmostSimplePair {
    pub label: String,
    pub ambient: Arc<FiniteGroup>,
    pub socle: Arc<FiniteGroup>,
}

impl AlmostSimplePair {
    /// Checks that the socle lies in the ambient group, is normal there and
    /// is nonabelian simple.
    pub fn new(label: impl Into<String>, ambient: Arc<FiniteGroup>, socle: Arc<FiniteGroup>) -> Result<Self> {
        if ambient.degree() != socle.degree() {
            return Err(Error::DegreeMismatch {
                left: ambient.degree(),
                right: socle.degree(),
            });
        }
        if !Arc::ptr_eq(&ambient, &socle) {
            for s in socle.generators() {
                if !ambient.contains(s)? {
                    return Err(Error::NotAMember);
                }
            }
            if !structure::is_normal_in(&socle, &ambient)? {
                return Err(Error::SocleNotNormal);
            }
        }
        if !structure::is_nonabelian_simple(&socle)? {
            return Err(Error::SocleNotSimple);
        }
        Ok(Self {
            label: label.into(),
            ambient,
            socle,
        })
    }

    /// `|A : S|`.
    pub fn outer_order(&self) -> Result<u64> {
        Ok(self.ambient.order()? / self.socle.order()?)
    }
}

/// The automorphism group of a simple group as a permutation group, paired
/// with the simple group itself.
pub fn build_aut_pair(socle_spec: &GroupSpec) -> Result<AlmostSimplePair> {
    let label = socle_spec.to_string();
    let (ambient, socle) = match *socle_spec {
        GroupSpec::Alternating(6) => (GroupSpec::PGammaL2(9), GroupSpec::Psl2(9)),
        GroupSpec::Alternating(n) if n >= 5 => (GroupSpec::Symmetric(n), GroupSpec::Alternating(n)),
        GroupSpec::Psl2(q) if q >= 4 => (GroupSpec::PGammaL2(q), GroupSpec::Psl2(q)),
        GroupSpec::File(ref path) => {
            let mut pair = load_generator_file(path)?;
            pair.label = label;
            return Ok(pair);
        }
        _ => {
            return Err(Error::UnsupportedParameter(format!(
                "{socle_spec} has no automorphism representation"
            )))
        }
    };
    let ambient = Arc::new(build(&ambient)?);
    let socle = Arc::new(build(&socle)?);
    AlmostSimplePair::new(label, ambient, socle)
}

/// Contents of a generator file before any group is enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFile {
    pub degree: usize,
    pub order: u64,
    pub socle_order: Option<u64>,
    pub generators: Vec<Permutation>,
    pub socle_generators: Vec<Permutation>,
}

impl GeneratorFile {
    /// Parses the line-oriented format:
    ///
    /// ```text
    /// # comment
    /// degree 5
    /// order 120
    /// socle-order 60
    /// gen 2,3,4,5,1
    /// gen 2,1,3,4,5
    /// socle-gen 2,3,1,4,5
    /// socle-gen 2,3,4,5,1
    /// ```
    ///
    /// Without `socle-gen` lines the socle is the ambient group.
    pub fn parse(text: &str) -> Result<Self> {
        let mut degree = None;
        let mut order = None;
        let mut socle_order = None;
        let mut generators = Vec::new();
        let mut socle_generators = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}: {raw:?}", lineno + 1));
            let (key, value) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| err("expected `key value`"))?;
            let value = value.trim();
            let number = || value.parse::<u64>().map_err(|_| err("expected a positive integer"));
            match key {
                "degree" => degree = Some(number()? as usize),
                "order" => order = Some(number()?),
                "socle-order" => socle_order = Some(number()?),
                "gen" | "socle-gen" => {
                    let p = Permutation::parse_image_list(value)
                        .map_err(|e| err(&e.to_string()))?;
                    if key == "gen" {
                        generators.push(p);
                    } else {
                        socle_generators.push(p);
                    }
                }
                _ => return Err(err("unknown key")),
            }
        }
        let degree = degree.ok_or_else(|| Error::Parse("missing `degree` line".into()))?;
        let order = order.ok_or_else(|| Error::Parse("missing `order` line".into()))?;
        if generators.is_empty() {
            return Err(Error::Parse("no `gen` lines".into()));
        }
        if !socle_generators.is_empty() && socle_order.is_none() {
            return Err(Error::Parse("`socle-gen` lines need a `socle-order` line".into()));
        }
        for g in generators.iter().chain(&socle_generators) {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(Self {
            degree,
            order,
            socle_order,
            generators,
            socle_generators,
        })
    }

    /// Enumerates both groups, checks the declared orders and the pair
    /// invariants.
    pub fn into_pair(self, label: impl Into<String>) -> Result<AlmostSimplePair> {
        let label = label.into();
        let ambient = Arc::new(finish(
            FiniteGroup::new(self.degree, self.generators)?.with_name(label.clone()),
            Some(self.order),
        )?);
        let socle = if self.socle_generators.is_empty() {
            if let Some(m) = self.socle_order {
                if m != self.order {
                    return Err(Error::OrderMismatch {
                        group: format!("socle of {label}"),
                        expected: m,
                        computed: self.order,
                    });
                }
            }
            ambient.clone()
        } else {
            Arc::new(finish(
                FiniteGroup::new(self.degree, self.socle_generators)?
                    .with_name(format!("soc({label})")),
                self.socle_order,
            )?)
        };
        AlmostSimplePair::new(label, ambient, socle)
    }
}

/// Reads a generator file and verifies the pair it describes. Relative
/// paths that do not exist are looked up in [`assets_dir`].
pub fn load_generator_file(path: &Path) -> Result<AlmostSimplePair> {
    let resolved = resolve_asset(path);
    let text = std::fs::read_to_string(&resolved).map_err(|source| Error::Io {
        path: resolved.clone(),
        source,
    })?;
    GeneratorFile::parse(&text)?.into_pair(format!("file:{}", path.display()))
}
