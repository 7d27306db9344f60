use crate::ring::{Elem, FiniteRing};

/// Direct-sum decomposition of `(R, +)` into cyclic subgroups.
///
/// Every element is `Σ c_i · g_i` for exactly one coefficient vector with
/// `0 <= c_i < order(g_i)`.
#[derive(Debug, Clone)]
pub struct GeneratorBasis {
    generators: Vec<Elem>,
    orders: Vec<usize>,
    decomposition: Vec<Vec<usize>>,
}

impl GeneratorBasis {
    /// Greedy construction: repeatedly take an element of maximal order whose
    /// cyclic subgroup meets the current span only in zero (smallest index on ties).
    pub fn compute(ring: &FiniteRing) -> Self {
        let n = ring.size();
        let orders_of: Vec<usize> = ring.elements().map(|x| ring.additive_order(x)).collect();
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        let mut decomposition: Vec<Option<Vec<usize>>> = vec![None; n];
        decomposition[ring.zero().index()] = Some(Vec::new());
        let mut span = vec![ring.zero()];

        while span.len() < n {
            let in_span = |x: Elem, decomposition: &[Option<Vec<usize>>]| decomposition[x.index()].is_some();
            let candidate = ring
                .elements()
                .filter(|&g| !in_span(g, &decomposition))
                .filter(|&g| {
                    // <g> ∩ span = {0}: no proper multiple of g lies in the span
                    let mut m = g;
                    for _ in 1..orders_of[g.index()] {
                        if in_span(m, &decomposition) {
                            return false;
                        }
                        m = ring.add(m, g);
                    }
                    true
                })
                .max_by(|&a, &b| orders_of[a.index()].cmp(&orders_of[b.index()]).then(b.cmp(&a)))
                .expect("a finite abelian group splits off a cyclic summand outside any proper summand");
            let order = orders_of[candidate.index()];
            let mut next_span = Vec::with_capacity(span.len() * order);
            let mut multiple = ring.zero();
            for c in 0..order {
                for &s in &span {
                    let y = ring.add(s, multiple);
                    let mut coeffs = decomposition[s.index()].clone().expect("span member");
                    coeffs.resize(generators.len(), 0);
                    coeffs.push(c);
                    if c > 0 {
                        debug_assert!(decomposition[y.index()].is_none());
                        decomposition[y.index()] = Some(coeffs);
                        next_span.push(y);
                    }
                }
                multiple = ring.add(multiple, candidate);
            }
            span.extend(next_span);
            generators.push(candidate);
            orders.push(order);
        }

        let k = generators.len();
        let decomposition = decomposition
            .into_iter()
            .map(|c| {
                let mut c = c.expect("every element decomposed");
                c.resize(k, 0);
                c
            })
            .collect();
        GeneratorBasis {
            generators,
            orders,
            decomposition,
        }
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn coefficients(&self, x: Elem) -> &[usize] {
        &self.decomposition[x.index()]
    }

    /// Index of the last generator with a nonzero coefficient in `x`.
    pub fn top(&self, x: Elem) -> Option<usize> {
        self.decomposition[x.index()].iter().rposition(|&c| c != 0)
    }

    /// `Σ c_i · images[i]` for the coefficients of `x`.
    pub fn extend(&self, ring: &FiniteRing, images: &[Elem], x: Elem) -> Elem {
        self.coefficients(x)
            .iter()
            .zip(images)
            .fold(ring.zero(), |acc, (&c, &img)| ring.add(acc, ring.times(c as i64, img)))
    }
}
