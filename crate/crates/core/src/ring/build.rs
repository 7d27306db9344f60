use super::{labels, Elem, FiniteRing, RingSpec, Structure};
use crate::error::{Error, Result};

/// Largest ring the builder will tabulate (two `size²` tables).
pub const MAX_RING_SIZE: usize = 4096;

#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    /// Run the O(size³) associativity/distributivity scan.
    pub check_axioms: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { check_axioms: true }
    }
}

pub(super) fn build(spec: &RingSpec, options: BuildOptions) -> Result<FiniteRing> {
    let ring = match spec {
        RingSpec::Zn { n } => zn(*n)?,
        RingSpec::TruncPoly { p, m } => trunc_poly(*p, *m)?,
        RingSpec::Matrix { base, dim } => {
            // Components are rings in their own right; the composite check
            // below covers them too, so they are built without the scan.
            let base = build(base, BuildOptions { check_axioms: false })?;
            matrix(spec.clone(), base, *dim)?
        }
        RingSpec::TriPattern { base } => {
            let base = build(base, BuildOptions { check_axioms: false })?;
            tri_pattern(spec.clone(), base)?
        }
        RingSpec::Product { factors } => {
            let factors = factors
                .iter()
                .map(|f| build(f, BuildOptions { check_axioms: false }))
                .collect::<Result<Vec<_>>>()?;
            product(spec.clone(), factors)?
        }
        RingSpec::Tables { size, add, mul, unity } => tables(spec.clone(), *size, add, mul, *unity)?,
    };
    if options.check_axioms {
        ring.check_axioms()?;
    }
    Ok(ring)
}

fn checked_size(size: usize) -> Result<usize> {
    if size > MAX_RING_SIZE {
        Err(Error::TooLarge {
            size,
            limit: MAX_RING_SIZE,
        })
    } else {
        Ok(size)
    }
}

fn is_prime_number(p: usize) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

fn tabulate(size: usize, op: impl Fn(usize, usize) -> usize) -> Vec<Elem> {
    let mut table = Vec::with_capacity(size * size);
    for x in 0..size {
        for y in 0..size {
            table.push(Elem::from_index(op(x, y)));
        }
    }
    table
}

fn zn(n: usize) -> Result<FiniteRing> {
    if n == 0 {
        return Err(Error::InvalidSpec("zn requires n >= 1".into()));
    }
    let n = checked_size(n)?;
    let labels = (0..n).map(|k| k.to_string()).collect();
    FiniteRing::from_parts(
        RingSpec::zn(n),
        Structure::Zn,
        n,
        tabulate(n, |x, y| (x + y) % n),
        tabulate(n, |x, y| (x * y) % n),
        labels,
        Some(Elem::from_index(1 % n)),
    )
}

/// Mixed-radix codec: digit 0 is most significant.
#[derive(Debug, Clone)]
pub(super) struct Radix {
    pub(super) radices: Vec<usize>,
}

impl Radix {
    pub(super) fn uniform(base: usize, len: usize) -> Self {
        Radix {
            radices: vec![base; len],
        }
    }

    pub(super) fn size(&self) -> Result<usize> {
        self.radices.iter().try_fold(1usize, |acc, &r| {
            acc.checked_mul(r)
                .filter(|&s| s <= MAX_RING_SIZE)
                .ok_or(Error::TooLarge {
                    size: usize::MAX,
                    limit: MAX_RING_SIZE,
                })
        })
    }

    pub(super) fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.radices.len()];
        for (d, &r) in digits.iter_mut().zip(&self.radices).rev() {
            *d = index % r;
            index /= r;
        }
        digits
    }

    pub(super) fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.radices).fold(0, |acc, (&d, &r)| acc * r + d)
    }
}

fn trunc_poly(p: usize, m: usize) -> Result<FiniteRing> {
    if !is_prime_number(p) {
        return Err(Error::InvalidSpec(format!("trunc_poly requires prime p, got {p}")));
    }
    if m == 0 {
        return Err(Error::InvalidSpec("trunc_poly requires m >= 1".into()));
    }
    let radix = Radix::uniform(p, m);
    let size = radix.size()?;
    let coeffs: Vec<Vec<usize>> = (0..size).map(|i| radix.decode(i)).collect();
    let add = tabulate(size, |x, y| {
        let s: Vec<usize> = coeffs[x].iter().zip(&coeffs[y]).map(|(a, b)| (a + b) % p).collect();
        radix.encode(&s)
    });
    let mul = tabulate(size, |x, y| {
        let mut s = vec![0; m];
        for (i, a) in coeffs[x].iter().enumerate() {
            for (j, b) in coeffs[y].iter().enumerate().take(m - i) {
                s[i + j] = (s[i + j] + a * b) % p;
            }
        }
        radix.encode(&s)
    });
    let labels = coeffs.iter().map(|c| labels::poly_label(c)).collect();
    let mut one = vec![0; m];
    one[0] = 1;
    FiniteRing::from_parts(
        RingSpec::trunc_poly(p, m),
        Structure::TruncPoly { p, m },
        size,
        add,
        mul,
        labels,
        Some(Elem::from_index(radix.encode(&one))),
    )
}

fn matrix(spec: RingSpec, base: FiniteRing, dim: usize) -> Result<FiniteRing> {
    if dim == 0 {
        return Err(Error::InvalidSpec("matrix requires dim >= 1".into()));
    }
    let radix = Radix::uniform(base.size(), dim * dim);
    let size = radix.size()?;
    let entries: Vec<Vec<Elem>> = (0..size)
        .map(|i| radix.decode(i).into_iter().map(Elem::from_index).collect())
        .collect();
    let encode = |m: &[Elem]| radix.encode(&m.iter().map(|e| e.index()).collect::<Vec<_>>());
    let add = tabulate(size, |x, y| {
        let s: Vec<Elem> = entries[x]
            .iter()
            .zip(&entries[y])
            .map(|(&a, &b)| base.add(a, b))
            .collect();
        encode(&s)
    });
    let mul = tabulate(size, |x, y| encode(&mat_mul(&base, &entries[x], &entries[y], dim)));
    let labels = entries.iter().map(|m| labels::matrix_label(&base, m, dim)).collect();
    let unity = base.unity().map(|one| {
        let mut id = vec![base.zero(); dim * dim];
        for i in 0..dim {
            id[i * dim + i] = one;
        }
        Elem::from_index(encode(&id))
    });
    FiniteRing::from_parts(
        spec,
        Structure::Matrix {
            base: Box::new(base),
            dim,
        },
        size,
        add,
        mul,
        labels,
        unity,
    )
}

pub(super) fn mat_mul(base: &FiniteRing, a: &[Elem], b: &[Elem], dim: usize) -> Vec<Elem> {
    let mut out = vec![base.zero(); dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = base.zero();
            for k in 0..dim {
                acc = base.add(acc, base.mul(a[i * dim + k], b[k * dim + j]));
            }
            out[i * dim + j] = acc;
        }
    }
    out
}

/// Positions of the free entries a, b, c, d, e in `[[a,b,c],[0,0,d],[0,0,e]]`.
pub(super) const TRI_POSITIONS: [usize; 5] = [0, 1, 2, 5, 8];

pub(super) fn tri_embed(base: &FiniteRing, free: &[Elem]) -> Vec<Elem> {
    let mut full = vec![base.zero(); 9];
    for (&pos, &v) in TRI_POSITIONS.iter().zip(free) {
        full[pos] = v;
    }
    full
}

fn tri_pattern(spec: RingSpec, base: FiniteRing) -> Result<FiniteRing> {
    let radix = Radix::uniform(base.size(), TRI_POSITIONS.len());
    let size = radix.size()?;
    let full: Vec<Vec<Elem>> = (0..size)
        .map(|i| {
            let free: Vec<Elem> = radix.decode(i).into_iter().map(Elem::from_index).collect();
            tri_embed(&base, &free)
        })
        .collect();
    let project = |m: &[Elem]| -> Result<usize> {
        for pos in [3, 4, 6, 7] {
            if m[pos] != base.zero() {
                return Err(Error::AxiomViolation {
                    axiom: "pattern closed under multiplication",
                    witness: vec![pos],
                });
            }
        }
        Ok(radix.encode(&TRI_POSITIONS.map(|p| m[p].index())))
    };
    let mut add = Vec::with_capacity(size * size);
    let mut mul = Vec::with_capacity(size * size);
    for x in &full {
        for y in &full {
            let s: Vec<Elem> = x.iter().zip(y).map(|(&a, &b)| base.add(a, b)).collect();
            add.push(Elem::from_index(project(&s)?));
            mul.push(Elem::from_index(project(&mat_mul(&base, x, y, 3))?));
        }
    }
    let labels = full.iter().map(|m| labels::matrix_label(&base, m, 3)).collect();
    FiniteRing::from_parts(
        spec,
        Structure::TriPattern { base: Box::new(base) },
        size,
        add,
        mul,
        labels,
        None,
    )
}

fn product(spec: RingSpec, factors: Vec<FiniteRing>) -> Result<FiniteRing> {
    if factors.is_empty() {
        return Err(Error::InvalidSpec("product requires at least one factor".into()));
    }
    let radix = Radix {
        radices: factors.iter().map(FiniteRing::size).collect(),
    };
    let size = radix.size()?;
    let tuples: Vec<Vec<Elem>> = (0..size)
        .map(|i| radix.decode(i).into_iter().map(Elem::from_index).collect())
        .collect();
    let combine = |x: usize, y: usize, op: &dyn Fn(&FiniteRing, Elem, Elem) -> Elem| {
        let t: Vec<usize> = factors
            .iter()
            .zip(tuples[x].iter().zip(&tuples[y]))
            .map(|(f, (&a, &b))| op(f, a, b).index())
            .collect();
        radix.encode(&t)
    };
    let add = tabulate(size, |x, y| combine(x, y, &|f, a, b| f.add(a, b)));
    let mul = tabulate(size, |x, y| combine(x, y, &|f, a, b| f.mul(a, b)));
    let labels = tuples.iter().map(|t| labels::tuple_label(&factors, t)).collect();
    let unity = factors
        .iter()
        .map(FiniteRing::unity)
        .collect::<Option<Vec<_>>>()
        .map(|ones| Elem::from_index(radix.encode(&ones.iter().map(|e| e.index()).collect::<Vec<_>>())));
    FiniteRing::from_parts(spec, Structure::Product { factors }, size, add, mul, labels, unity)
}

fn tables(
    spec: RingSpec,
    size: usize,
    add: &[Vec<usize>],
    mul: &[Vec<usize>],
    unity: Option<usize>,
) -> Result<FiniteRing> {
    if size == 0 {
        return Err(Error::InvalidSpec("tables require size >= 1".into()));
    }
    let size = checked_size(size)?;
    let flatten = |name: &str, t: &[Vec<usize>]| -> Result<Vec<Elem>> {
        if t.len() != size || t.iter().any(|row| row.len() != size) {
            return Err(Error::InvalidSpec(format!("{name} table must be {size}x{size}")));
        }
        let mut flat = Vec::with_capacity(size * size);
        for (x, row) in t.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(Error::AxiomViolation {
                        axiom: if name == "add" {
                            "addition is closed"
                        } else {
                            "multiplication is closed"
                        },
                        witness: vec![x, y],
                    });
                }
                flat.push(Elem::from_index(v));
            }
        }
        Ok(flat)
    };
    let add = flatten("add", add)?;
    let mul = flatten("mul", mul)?;
    if let Some(u) = unity {
        if u >= size {
            return Err(Error::IndexOutOfRange { index: u, size });
        }
    }
    let labels = (0..size).map(|k| k.to_string()).collect();
    FiniteRing::from_parts(
        spec,
        Structure::Tables,
        size,
        add,
        mul,
        labels,
        unity.map(Elem::from_index),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radix_roundtrip() {
        let r = Radix { radices: vec![2, 3, 4] };
        assert_eq!(r.size().unwrap(), 24);
        for i in 0..24 {
            assert_eq!(r.encode(&r.decode(i)), i);
        }
        // most significant digit first
        assert_eq!(r.decode(1), vec![0, 0, 1]);
        assert_eq!(r.decode(12), vec![1, 0, 0]);
    }

    #[test]
    fn canonical_orders() {
        let m = FiniteRing::build(&RingSpec::matrix(RingSpec::zn(2), 2)).unwrap();
        assert_eq!(m.label(Elem::from_index(1)), "[[0,0],[0,1]]");
        assert_eq!(m.label(Elem::from_index(8)), "[[1,0],[0,0]]");

        let tp = FiniteRing::build(&RingSpec::trunc_poly(3, 3)).unwrap();
        assert_eq!(tp.label(Elem::from_index(1)), "X^2");
        assert_eq!(tp.label(Elem::from_index(9)), "1");

        let p = FiniteRing::build(&RingSpec::product(vec![RingSpec::zn(2), RingSpec::zn(3)])).unwrap();
        assert_eq!(p.label(Elem::from_index(4)), "(1,1)");
    }

    #[test]
    fn same_spec_same_tables() {
        let spec = RingSpec::tri_pattern(RingSpec::zn(2));
        let a = FiniteRing::build(&spec).unwrap();
        let b = FiniteRing::build(&spec).unwrap();
        assert_eq!(a.add, b.add);
        assert_eq!(a.mul, b.mul);
        assert_eq!(a.labels, b.labels);
        assert_eq!(a.id(), b.id());
    }

    #[test]
    fn tri_pattern_product_stays_in_pattern() {
        // Symbolic product of two pattern matrices, entry by entry:
        // [[aa', ab', ac'+bd'+ce'], [0,0,de'], [0,0,ee']]
        let t = FiniteRing::build(&RingSpec::tri_pattern(RingSpec::zn(2))).unwrap();
        let radix = Radix::uniform(2, 5);
        for x in t.elements() {
            for y in t.elements() {
                let [a, b, c, d, e]: [usize; 5] = radix.decode(x.index()).try_into().unwrap();
                let [a2, b2, c2, d2, e2]: [usize; 5] = radix.decode(y.index()).try_into().unwrap();
                let expect = [
                    a * a2 % 2,
                    a * b2 % 2,
                    (a * c2 + b * d2 + c * e2) % 2,
                    d * e2 % 2,
                    e * e2 % 2,
                ];
                assert_eq!(t.mul(x, y).index(), radix.encode(&expect));
            }
        }
    }

    #[test]
    fn unchecked_build_skips_the_scan() {
        let bad = RingSpec::Tables {
            size: 2,
            add: vec![vec![0, 1], vec![1, 0]],
            mul: vec![vec![1, 1], vec![1, 1]],
            unity: None,
        };
        assert!(FiniteRing::build_with(&bad, BuildOptions { check_axioms: false }).is_ok());
    }
}
