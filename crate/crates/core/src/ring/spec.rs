use serde::{Deserialize, Serialize};

/// Declarative description of a finite ring.
///
/// Serialized with an internal `kind` tag, e.g. `{"kind":"zn","n":4}` or
/// `{"kind":"matrix","base":{"kind":"zn","n":2},"dim":2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    /// Integers modulo `n`.
    Zn { n: usize },
    /// `dim x dim` matrices over `base`.
    Matrix { base: Box<RingSpec>, dim: usize },
    /// Truncated polynomials `Z_p[X]/(X^m)`.
    TruncPoly { p: usize, m: usize },
    /// 3x3 matrices over `base` of the shape `[[a,b,c],[0,0,d],[0,0,e]]`.
    TriPattern { base: Box<RingSpec> },
    /// Direct product of the factors.
    Product { factors: Vec<RingSpec> },
    /// Explicit Cayley tables.
    Tables {
        size: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        unity: Option<usize>,
    },
}

impl RingSpec {
    pub fn zn(n: usize) -> Self {
        RingSpec::Zn { n }
    }

    pub fn matrix(base: RingSpec, dim: usize) -> Self {
        RingSpec::Matrix {
            base: Box::new(base),
            dim,
        }
    }

    pub fn trunc_poly(p: usize, m: usize) -> Self {
        RingSpec::TruncPoly { p, m }
    }

    pub fn tri_pattern(base: RingSpec) -> Self {
        RingSpec::TriPattern { base: Box::new(base) }
    }

    pub fn product(factors: Vec<RingSpec>) -> Self {
        RingSpec::Product { factors }
    }

    /// Short human-readable name, e.g. `M2(Z2)` or `Z3[X]/(X^3)`.
    pub fn name(&self) -> String {
        match self {
            RingSpec::Zn { n } => format!("Z{n}"),
            RingSpec::Matrix { base, dim } => format!("M{dim}({})", base.name()),
            RingSpec::TruncPoly { p, m } => format!("Z{p}[X]/(X^{m})"),
            RingSpec::TriPattern { base } => format!("Tri({})", base.name()),
            RingSpec::Product { factors } => factors.iter().map(RingSpec::name).collect::<Vec<_>>().join(" x "),
            RingSpec::Tables { size, .. } => format!("Tables[{size}]"),
        }
    }

    /// The rings every acceptance run is performed on.
    pub fn standard_corpus() -> Vec<RingSpec> {
        let mut corpus: Vec<RingSpec> = (2..=8).map(RingSpec::zn).collect();
        corpus.push(RingSpec::trunc_poly(2, 2));
        corpus.push(RingSpec::trunc_poly(3, 3));
        corpus.push(RingSpec::matrix(RingSpec::zn(2), 2));
        corpus.push(RingSpec::tri_pattern(RingSpec::zn(2)));
        corpus.push(RingSpec::product(vec![RingSpec::zn(2), RingSpec::zn(3)]));
        corpus
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_field_names() {
        let spec: RingSpec = serde_json::from_str(r#"{"kind":"zn","n":4}"#).unwrap();
        assert_eq!(spec, RingSpec::zn(4));

        let spec: RingSpec = serde_json::from_str(r#"{"kind":"matrix","base":{"kind":"zn","n":2},"dim":2}"#).unwrap();
        assert_eq!(spec, RingSpec::matrix(RingSpec::zn(2), 2));

        let spec: RingSpec = serde_json::from_str(r#"{"kind":"trunc_poly","p":3,"m":3}"#).unwrap();
        assert_eq!(spec, RingSpec::trunc_poly(3, 3));

        let spec: RingSpec = serde_json::from_str(r#"{"kind":"tri_pattern","base":{"kind":"zn","n":2}}"#).unwrap();
        assert_eq!(spec, RingSpec::tri_pattern(RingSpec::zn(2)));

        let spec: RingSpec =
            serde_json::from_str(r#"{"kind":"product","factors":[{"kind":"zn","n":2},{"kind":"zn","n":3}]}"#).unwrap();
        assert_eq!(spec.name(), "Z2 x Z3");

        let spec: RingSpec =
            serde_json::from_str(r#"{"kind":"tables","size":2,"add":[[0,1],[1,0]],"mul":[[0,0],[0,1]],"unity":1}"#)
                .unwrap();
        assert!(matches!(
            spec,
            RingSpec::Tables {
                size: 2,
                unity: Some(1),
                ..
            }
        ));
    }

    #[test]
    fn serializes_back_to_the_same_shape() {
        let spec = RingSpec::tri_pattern(RingSpec::zn(2));
        assert_eq!(
            serde_json::to_string(&spec).unwrap(),
            r#"{"kind":"tri_pattern","base":{"kind":"zn","n":2}}"#
        );
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(serde_json::from_str::<RingSpec>(r#"{"kind":"zn","n":4,"m":1}"#).is_err());
    }
}
