//! Regenerates the generator files in `assets/`.
//!
//! Usage: `cargo run --release --example gen_assets [OUTPUT_DIR]`
//!
//! Every group is built from an explicit construction, enumerated, and
//! reduced to two generators by a seeded random search where possible.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use nilprob::field::SmallField;
use nilprob::group::{closure, ElementTable};
use nilprob::{structure, FiniteGroup, Permutation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Vector = Vec<usize>;

/// Points of `PG(dim-1, q)` as normalized vectors (first nonzero entry 1).
struct ProjectiveSpace {
    field: SmallField,
    points: Vec<Vector>,
    index: HashMap<Vector, usize>,
}

impl ProjectiveSpace {
    fn new(q: usize, dim: usize) -> Self {
        let field = SmallField::new(q).expect("supported field");
        let mut points = Vec::new();
        for code in 1..q.pow(dim as u32) {
            let v: Vector = (0..dim).map(|i| code / q.pow(i as u32) % q).collect();
            if normalize(&field, &v) == v {
                points.push(v);
            }
        }
        let index = points.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Self { field, points, index }
    }

    fn position(&self, v: &[usize]) -> usize {
        self.index[&normalize(&self.field, v)]
    }

    /// Row vector times matrix.
    fn apply(&self, v: &[usize], m: &[Vector]) -> Vector {
        let f = &self.field;
        (0..v.len())
            .map(|j| (0..v.len()).fold(0, |acc, i| f.add(acc, f.mul(v[i], m[i][j]))))
            .collect()
    }

    fn point_perm(&self, map: impl Fn(&[usize]) -> Vector) -> Permutation {
        let images: Vec<usize> = self.points.iter().map(|v| self.position(&map(v))).collect();
        Permutation::from_images(&images).expect("bijection on points")
    }

    fn dot(&self, a: &[usize], b: &[usize]) -> usize {
        let f = &self.field;
        a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
    }

    fn cross(&self, a: &[usize], b: &[usize]) -> Vector {
        let f = &self.field;
        let term = |i: usize, j: usize| f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
        vec![term(1, 2), term(2, 0), term(0, 1)]
    }

    /// Action on points and lines of a projective plane: points are
    /// `1..=n`, line `i` (same coordinates as point `i`) is `n + i`.
    fn plane_perm(&self, map: impl Fn(&[usize]) -> Vector) -> Permutation {
        let n = self.points.len();
        let mut images: Vec<usize> = self.points.iter().map(|v| self.position(&map(v))).collect();
        for line in &self.points {
            let on: Vec<&Vector> = self.points.iter().filter(|p| self.dot(p, line) == 0).take(2).collect();
            let image = self.cross(&map(on[0]), &map(on[1]));
            images.push(n + self.position(&image));
        }
        Permutation::from_images(&images).expect("bijection on flags")
    }

    fn polarity(&self) -> Permutation {
        let n = self.points.len();
        let images: Vec<usize> = (0..2 * n).map(|i| (i + n) % (2 * n)).collect();
        Permutation::from_images(&images).expect("involution")
    }
}

fn normalize(f: &SmallField, v: &[usize]) -> Vector {
    let lead = v.iter().copied().find(|&x| x != 0).expect("nonzero vector");
    let inv = f.inv(lead);
    v.iter().map(|&x| f.mul(x, inv)).collect()
}

fn identity_matrix(dim: usize) -> Vec<Vector> {
    (0..dim).map(|i| (0..dim).map(|j| (i == j) as usize).collect()).collect()
}

/// Elementary matrices `I + a·E_ij` for `a` in `scalars`.
fn elementary(dim: usize, scalars: &[usize]) -> Vec<Vec<Vector>> {
    let mut out = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if i != j {
                for &a in scalars {
                    let mut m = identity_matrix(dim);
                    m[i][j] = a;
                    out.push(m);
                }
            }
        }
    }
    out
}

fn enumerate(degree: usize, gens: &[Permutation], order: u64) -> ElementTable {
    let table = closure(degree, gens, order).expect("order within cap");
    assert_eq!(table.len() as u64, order, "construction has the wrong order");
    table
}

/// Two random elements generating the whole group, if found quickly.
fn two_generators(table: &ElementTable, rng: &mut ChaCha8Rng) -> Option<Vec<Permutation>> {
    let n = table.len();
    for _ in 0..64 {
        let a = table.permutation(rng.random_range(0..n));
        let b = table.permutation(rng.random_range(0..n));
        if closure(table.degree(), &[a.clone(), b.clone()], n as u64).is_ok_and(|t| t.len() == n) {
            return Some(vec![a, b]);
        }
    }
    None
}

fn reduced(degree: usize, gens: Vec<Permutation>, order: u64, rng: &mut ChaCha8Rng) -> Vec<Permutation> {
    let table = enumerate(degree, &gens, order);
    two_generators(&table, rng).unwrap_or(gens)
}

struct Asset {
    file: &'static str,
    header: String,
    degree: usize,
    order: u64,
    gens: Vec<Permutation>,
    socle: Option<(u64, Vec<Permutation>)>,
}

impl Asset {
    fn render(&self) -> String {
        let mut s = String::new();
        for line in self.header.lines() {
            writeln!(s, "# {line}").unwrap();
        }
        writeln!(s, "degree {}", self.degree).unwrap();
        writeln!(s, "order {}", self.order).unwrap();
        if let Some((order, _)) = &self.socle {
            writeln!(s, "socle-order {order}").unwrap();
        }
        for g in &self.gens {
            writeln!(s, "gen {}", g.to_image_list()).unwrap();
        }
        if let Some((_, gens)) = &self.socle {
            for g in gens {
                writeln!(s, "socle-gen {}", g.to_image_list()).unwrap();
            }
        }
        s
    }
}

fn psl3_plane(q: usize, rng: &mut ChaCha8Rng) -> Asset {
    let space = ProjectiveSpace::new(q, 3);
    let f = &space.field;
    let degree = 2 * space.points.len();
    let scalars: Vec<usize> = (1..f.degree() + 1).map(|i| f.characteristic().pow(i as u32 - 1)).collect();
    let socle_gens: Vec<Permutation> = elementary(3, &scalars)
        .iter()
        .map(|m| space.plane_perm(|v| space.apply(v, m)))
        .collect();
    let mut outer = vec![space.polarity()];
    let (socle_order, order, header) = if q == 3 {
        (
            5616,
            11232,
            "PSL(3,3).2 on the 13 points and 13 lines of PG(2,3) (points 1..13,\n\
             line i+13 has the coordinates of point i). The socle acts by\n\
             v -> vM on points; the extra generator is the polarity swapping\n\
             point i and line i."
                .to_string(),
        )
    } else {
        let omega = f.primitive_element();
        let mut d = identity_matrix(3);
        d[0][0] = omega;
        outer.push(space.plane_perm(|v| space.apply(v, &d)));
        outer.push(space.plane_perm(|v| v.iter().map(|&x| f.frobenius(x)).collect()));
        (
            20160,
            241920,
            "Aut(PSL(3,4)) = PSL(3,4).D12 on the 21 points and 21 lines of PG(2,4)\n\
             (points 1..21, line i+21 has the coordinates of point i). GF(4) uses\n\
             x^2+x+1. Outer generators: diag(w,1,1) (diagonal, order 3), the\n\
             Frobenius map on coordinates (field), and the polarity swapping\n\
             point i and line i (graph).\n\
             Extension labels, by the centralizer order in the socle of an\n\
             involution in the outer coset: graph-field 72 (PSU(3,2)) is S.2_1,\n\
             field 168 (PSL(3,2)) is S.2_2, graph 60 (PSL(2,4)) is S.2_3.\n\
             S.2^2 is the preimage of the Klein four subgroup of D12 and S.6\n\
             that of the cyclic subgroup of order 6."
                .to_string(),
        )
    };
    let socle = reduced(degree, socle_gens.clone(), socle_order, rng);
    let mut all = socle_gens;
    all.extend(outer);
    let gens = reduced(degree, all, order, rng);
    Asset {
        file: if q == 3 { "psl33_aut.gens" } else { "psl34_aut.gens" },
        header,
        degree,
        order,
        gens,
        socle: Some((socle_order, socle)),
    }
}

fn psp43(rng: &mut ChaCha8Rng) -> Asset {
    let space = ProjectiveSpace::new(3, 4);
    let f = &space.field;
    let form = |x: &[usize], y: &[usize]| {
        let plus = f.add(f.mul(x[0], y[2]), f.mul(x[1], y[3]));
        let minus = f.add(f.mul(x[2], y[0]), f.mul(x[3], y[1]));
        f.sub(plus, minus)
    };
    let socle_gens: Vec<Permutation> = space
        .points
        .iter()
        .map(|u| {
            space.point_perm(|x| {
                let c = form(x, u);
                x.iter().zip(u).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect()
            })
        })
        .collect();
    let minus_one = f.neg(1);
    let similitude = space.point_perm(|x| vec![x[0], x[1], f.mul(minus_one, x[2]), f.mul(minus_one, x[3])]);
    let degree = space.points.len();
    let socle = reduced(degree, socle_gens.clone(), 25920, rng);
    let mut all = socle_gens;
    all.push(similitude);
    let gens = reduced(degree, all, 51840, rng);
    Asset {
        file: "psu42_aut.gens",
        header: "Aut(PSU(4,2)) = PSp(4,3).2 on the 40 points of PG(3,3), for the form\n\
                 x1y3 + x2y4 - x3y1 - x4y2. The socle is generated by symplectic\n\
                 transvections; the outer generator is the similitude\n\
                 diag(1,1,-1,-1)."
            .to_string(),
        degree,
        order: 51840,
        gens,
        socle: Some((25920, socle)),
    }
}

fn psp62(rng: &mut ChaCha8Rng) -> Asset {
    let form = |x: usize, y: usize| (((x & 7) & (y >> 3)) ^ ((x >> 3) & (y & 7))).count_ones() % 2;
    let transvections: Vec<Permutation> = (1..64usize)
        .map(|u| {
            let images: Vec<usize> = (1..64usize)
                .map(|x| if form(x, u) == 1 { x ^ u } else { x } - 1)
                .collect();
            Permutation::from_images(&images).expect("bijection")
        })
        .collect();
    let gens = reduced(63, transvections, 1_451_520, rng);
    Asset {
        file: "psp62.gens",
        header: "PSp(6,2) = Sp(6,2) on the 63 nonzero vectors of GF(2)^6 (vector with\n\
                 binary value k is point k), for the form sum x_i y_(i+3) + x_(i+3) y_i.\n\
                 The outer automorphism group is trivial, so ambient = socle."
            .to_string(),
        degree: 63,
        order: 1_451_520,
        gens,
        socle: None,
    }
}

fn m11_generators() -> Vec<Permutation> {
    vec![
        Permutation::parse_cycles("(1 2 3 4 5 6 7 8 9 10 11)", 11).unwrap(),
        Permutation::parse_cycles("(3 7 11 8)(4 10 5 6)", 11).unwrap(),
    ]
}

fn m11() -> Asset {
    let gens = m11_generators();
    enumerate(11, &gens, 7920);
    Asset {
        file: "m11.gens",
        header: "M11 on 11 points. The outer automorphism group is trivial.".to_string(),
        degree: 11,
        order: 7920,
        gens,
        socle: None,
    }
}

/// `M12.2` on 24 points: `M12` acting on `1..12` and, twisted by an outer
/// involutory automorphism `psi`, on `13..24`, plus the swap `i <-> i+12`.
fn m12_aut(rng: &mut ChaCha8Rng) -> Asset {
    let mut gens: Vec<Permutation> = m11_generators().iter().map(|g| g.extend_to(12).unwrap()).collect();
    gens.push(Permutation::parse_cycles("(1 12)(2 11)(3 6)(4 8)(5 9)(7 10)", 12).unwrap());
    let table = enumerate(12, &gens, 95040);
    let group = FiniteGroup::new(12, gens).unwrap();
    let pair = loop {
        let b = table.permutation(rng.random_range(0..table.len()));
        let a = group.generators()[0].clone();
        if closure(12, &[a.clone(), b.clone()], 95040).unwrap().len() == 95040 {
            break (a, b);
        }
    };
    let (a, b) = pair;
    let classes = structure::conjugacy_classes(&group).unwrap();
    let fingerprint = |x: &Permutation, y: &Permutation| {
        [
            x.then_checked(y).order(),
            x.then_checked(&y.inverse()).order(),
            x.then_checked(x).then_checked(y).order(),
            Permutation::commutator(x, y).unwrap().order(),
        ]
    };
    let target = fingerprint(&a, &b);
    let phi = 'search: {
        for (a2, _) in classes.iter().filter(|(r, _)| r.order() == a.order()) {
            for b2 in table.permutations().filter(|y| y.order() == b.order()) {
                if fingerprint(a2, &b2) != target {
                    continue;
                }
                if let Some(map) = extend_homomorphism(&table, (&a, &b), (a2, &b2)) {
                    let outer = table
                        .iter()
                        .zip(&map)
                        .any(|(x, y)| fixed(x) != fixed(y.images()));
                    if outer {
                        break 'search map;
                    }
                }
            }
        }
        panic!("no outer automorphism found");
    };
    let pos = |x: &Permutation| table.position(x.images()).unwrap();
    let psi = table
        .permutations()
        .find_map(|h| {
            let h_inv = h.inverse();
            let conj = |i: usize| h_inv.then_checked(&phi[i]).then_checked(&h);
            let involutory = [&a, &b].iter().all(|s| {
                let once = conj(pos(s));
                conj(pos(&once)) == **s
            });
            involutory.then(|| (0..table.len()).map(conj).collect::<Vec<_>>())
        })
        .expect("M12 has an outer involutory automorphism");
    let twisted = |x: &Permutation| {
        let y = &psi[pos(x)];
        let images: Vec<usize> = (0..12)
            .map(|k| x.images()[k] as usize)
            .chain((0..12).map(|k| 12 + y.images()[k] as usize))
            .collect();
        Permutation::from_images(&images).unwrap()
    };
    let swap = Permutation::from_images(&(0..24).map(|i| (i + 12) % 24).collect::<Vec<_>>()).unwrap();
    let socle = vec![twisted(&a), twisted(&b)];
    let mut all = socle.clone();
    all.push(swap);
    enumerate(24, &socle, 95040);
    enumerate(24, &all, 190080);
    Asset {
        file: "m12_aut.gens",
        header: "Aut(M12) = M12.2 on 24 points. The socle M12 acts on 1..12 as usual\n\
                 and on 13..24 through an outer automorphism of order 2; the extra\n\
                 generator swaps i and i+12."
            .to_string(),
        degree: 24,
        order: 190080,
        gens: all,
        socle: Some((95040, socle)),
    }
}

fn fixed(x: &[u8]) -> usize {
    x.iter().enumerate().filter(|(i, &y)| *i == y as usize).count()
}

/// The homomorphism sending `from` to `to`, tabulated over `table`, if the
/// assignment extends to one.
fn extend_homomorphism(
    table: &ElementTable,
    from: (&Permutation, &Permutation),
    to: (&Permutation, &Permutation),
) -> Option<Vec<Permutation>> {
    let n = table.len();
    let mut image: Vec<Option<Permutation>> = vec![None; n];
    let id = Permutation::identity(table.degree());
    image[table.position(id.images()).unwrap()] = Some(id.clone());
    let mut queue = vec![id];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head].clone();
        head += 1;
        let fx = image[table.position(x.images()).unwrap()].clone().unwrap();
        for (s, t) in [(from.0, to.0), (from.1, to.1)] {
            let y = x.then_checked(s);
            let fy = fx.then_checked(t);
            let slot = &mut image[table.position(y.images()).unwrap()];
            match slot {
                Some(existing) if *existing != fy => return None,
                Some(_) => {}
                None => {
                    *slot = Some(fy);
                    queue.push(y);
                }
            }
        }
    }
    image.into_iter().collect()
}

trait ThenChecked {
    fn then_checked(&self, other: &Self) -> Self;
}

impl ThenChecked for Permutation {
    fn then_checked(&self, other: &Self) -> Self {
        self.compose(other).expect("equal degrees")
    }
}

type Builder = Box<dyn Fn(&mut ChaCha8Rng) -> Asset>;

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(nilprob::catalog::assets_dir);
    std::fs::create_dir_all(&dir).expect("create output directory");
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let builders: Vec<(&str, Builder)> = vec![
        ("psl33", Box::new(|r| psl3_plane(3, r))),
        ("psl34", Box::new(|r| psl3_plane(4, r))),
        ("psu42", Box::new(psp43)),
        ("m11", Box::new(|_| m11())),
        ("m12", Box::new(m12_aut)),
        ("psp62", Box::new(psp62)),
    ];
    for (name, build) in builders {
        let asset = build(&mut rng);
        let path = dir.join(asset.file);
        std::fs::write(&path, asset.render()).expect("write asset");
        println!("{name}: wrote {}", path.display());
    }
}
