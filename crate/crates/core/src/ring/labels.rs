//! Display labels and the matching element parser.
//!
//! Every label printed for an element parses back to that element. The
//! parser also accepts a few aliases: `E<i><j>` matrix units, `I` for the
//! identity matrix, `A` for the fixed element `[[1,1,1],[0,0,1],[0,0,1]]` of a
//! pattern ring, and `#<k>` for a raw element index in any ring.

use super::build::{Radix, TRI_POSITIONS};
use super::{Elem, FiniteRing, Structure};
use crate::error::{Error, Result};

pub(super) fn poly_label(coeffs: &[usize]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(k, &c)| match (k, c) {
            (0, c) => c.to_string(),
            (1, 1) => "X".to_string(),
            (1, c) => format!("{c}X"),
            (k, 1) => format!("X^{k}"),
            (k, c) => format!("{c}X^{k}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

pub(super) fn matrix_label(base: &FiniteRing, entries: &[Elem], dim: usize) -> String {
    let rows: Vec<String> = entries
        .chunks(dim)
        .map(|row| {
            let cells: Vec<&str> = row.iter().map(|&e| base.label(e)).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

pub(super) fn tuple_label(factors: &[FiniteRing], parts: &[Elem]) -> String {
    let cells: Vec<&str> = factors.iter().zip(parts).map(|(f, &e)| f.label(e)).collect();
    format!("({})", cells.join(","))
}

/// Split on `sep` at bracket depth zero.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn strip_brackets(s: &str, open: char, close: char) -> Option<&str> {
    s.strip_prefix(open)?.strip_suffix(close)
}

impl FiniteRing {
    /// Resolve element text: a label, an alias, or `#<index>`.
    pub fn parse_element(&self, text: &str) -> Result<Elem> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(parse_error(text, "empty element"));
        }
        if let Some(idx) = compact.strip_prefix('#') {
            let index: usize = idx
                .parse()
                .map_err(|_| parse_error(text, "expected an index after '#'"))?;
            return self.elem(index).map_err(|e| parse_error(text, &e.to_string()));
        }
        self.parse_compact(&compact)
            .map_err(|reason| parse_error(text, &reason))
    }

    fn parse_compact(&self, s: &str) -> Result<Elem, String> {
        match self.structure() {
            Structure::Zn | Structure::Tables => self.parse_integer(s),
            Structure::TruncPoly { p, m } => self.parse_poly(s, *p, *m),
            Structure::Matrix { base, dim } => self.parse_matrix(s, base, *dim),
            Structure::TriPattern { base } => self.parse_tri(s, base),
            Structure::Product { factors } => self.parse_tuple(s, factors),
        }
    }

    fn parse_integer(&self, s: &str) -> Result<Elem, String> {
        let (negate, digits) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let k: usize = digits
            .parse()
            .map_err(|_| format!("expected an integer in [0, {})", self.size()))?;
        let x = self.elem(k).map_err(|e| e.to_string())?;
        Ok(if negate { self.neg(x) } else { x })
    }

    fn parse_poly(&self, s: &str, p: usize, m: usize) -> Result<Elem, String> {
        let mut coeffs = vec![0usize; m];
        let mut rest = s;
        let mut first = true;
        while !rest.is_empty() {
            let mut negative = false;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                rest = r;
                negative = true;
            } else if !first {
                return Err(format!("unexpected text {rest:?}"));
            }
            first = false;
            let end = rest
                .char_indices()
                .skip(1)
                .find(|&(_, c)| c == '+' || c == '-')
                .map_or(rest.len(), |(i, _)| i);
            let (term, tail) = rest.split_at(end);
            rest = tail;
            let (coef, degree) = parse_term(term)?;
            if coef >= p {
                return Err(format!("coefficient {coef} out of range for Z{p}"));
            }
            if degree >= m {
                return Err(format!("degree {degree} is zero in Z{p}[X]/(X^{m})"));
            }
            let c = if negative { (p - coef) % p } else { coef };
            coeffs[degree] = (coeffs[degree] + c) % p;
        }
        Ok(Elem::from_index(Radix::uniform(p, m).encode(&coeffs)))
    }

    fn parse_matrix(&self, s: &str, base: &FiniteRing, dim: usize) -> Result<Elem, String> {
        let radix = Radix::uniform(base.size(), dim * dim);
        let encode =
            |entries: &[Elem]| Elem::from_index(radix.encode(&entries.iter().map(|e| e.index()).collect::<Vec<_>>()));
        if s == "0" {
            return Ok(self.zero());
        }
        if s == "I" || s == "1" {
            return self.unity().ok_or_else(|| "base ring has no unity".to_string());
        }
        if let Some(ij) = s.strip_prefix('E') {
            let one = base.unity().ok_or("matrix units need a base ring with unity")?;
            let digits: Vec<usize> = ij
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or("matrix unit must be E<row><col>")?;
            let [i, j] = digits[..] else {
                return Err("matrix unit must be E<row><col>".into());
            };
            if !(1..=dim).contains(&i) || !(1..=dim).contains(&j) {
                return Err(format!("matrix unit position out of range for {dim}x{dim}"));
            }
            let mut entries = vec![base.zero(); dim * dim];
            entries[(i - 1) * dim + (j - 1)] = one;
            return Ok(encode(&entries));
        }
        let entries = parse_matrix_literal(s, base, dim)?;
        Ok(encode(&entries))
    }

    fn parse_tri(&self, s: &str, base: &FiniteRing) -> Result<Elem, String> {
        let radix = Radix::uniform(base.size(), TRI_POSITIONS.len());
        if s == "0" {
            return Ok(self.zero());
        }
        if s == "A" {
            let one = base.unity().ok_or("A needs a base ring with unity")?;
            let free = [one, one, one, one, one];
            return Ok(Elem::from_index(radix.encode(&free.map(|e| e.index()))));
        }
        let full = parse_matrix_literal(s, base, 3)?;
        if [3, 4, 6, 7].iter().any(|&pos| full[pos] != base.zero()) {
            return Err("matrix is not of the form [[a,b,c],[0,0,d],[0,0,e]]".into());
        }
        Ok(Elem::from_index(
            radix.encode(&TRI_POSITIONS.map(|pos| full[pos].index())),
        ))
    }

    fn parse_tuple(&self, s: &str, factors: &[FiniteRing]) -> Result<Elem, String> {
        let inner = strip_brackets(s, '(', ')').ok_or("expected a tuple (a,b,...)")?;
        let parts = split_top(inner, ',');
        if parts.len() != factors.len() {
            return Err(format!("expected {} components, got {}", factors.len(), parts.len()));
        }
        let radix = Radix {
            radices: factors.iter().map(FiniteRing::size).collect(),
        };
        let digits = factors
            .iter()
            .zip(parts)
            .map(|(f, part)| f.parse_compact(part).map(Elem::index))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Elem::from_index(radix.encode(&digits)))
    }
}

fn parse_matrix_literal(s: &str, base: &FiniteRing, dim: usize) -> Result<Vec<Elem>, String> {
    let inner = strip_brackets(s, '[', ']').ok_or("expected a matrix [[..],..]")?;
    let rows = split_top(inner, ',');
    if rows.len() != dim {
        return Err(format!("expected {dim} rows, got {}", rows.len()));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for row in rows {
        let cells = strip_brackets(row, '[', ']').ok_or("expected a row [..]")?;
        let cells = split_top(cells, ',');
        if cells.len() != dim {
            return Err(format!("expected {dim} entries per row, got {}", cells.len()));
        }
        for cell in cells {
            entries.push(base.parse_compact(cell)?);
        }
    }
    Ok(entries)
}

/// `[c][X[^k]]` with `²`/`³` accepted as exponents.
fn parse_term(term: &str) -> Result<(usize, usize), String> {
    let bad = || format!("cannot parse polynomial term {term:?}");
    let Some(xpos) = term.find(['X', 'x']) else {
        return term.parse().map(|c| (c, 0)).map_err(|_| bad());
    };
    let (coef, rest) = term.split_at(xpos);
    let coef = match coef.trim_end_matches('*') {
        "" => 1,
        c => c.parse().map_err(|_| bad())?,
    };
    let exp = &rest[1..];
    let degree = match exp {
        "" => 1,
        "²" => 2,
        "³" => 3,
        e => e.strip_prefix('^').and_then(|d| d.parse().ok()).ok_or_else(bad)?,
    };
    Ok((coef, degree))
}

fn parse_error(text: &str, reason: &str) -> Error {
    Error::ParseElement {
        text: text.to_string(),
        reason: reason.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::RingSpec;
    use super::*;
    use proptest::prelude::*;

    fn ring(spec: RingSpec) -> FiniteRing {
        FiniteRing::build(&spec).unwrap()
    }

    #[test]
    fn poly_labels() {
        assert_eq!(poly_label(&[0, 0, 0]), "0");
        assert_eq!(poly_label(&[1, 2, 0]), "1+2X");
        assert_eq!(poly_label(&[1, 2, 1]), "1+2X+X^2");
        assert_eq!(poly_label(&[0, 1, 2]), "X+2X^2");
    }

    #[test]
    fn parse_forms() {
        let tp = ring(RingSpec::trunc_poly(3, 3));
        let x = tp.parse_element("1+2X").unwrap();
        assert_eq!(x.index(), 9 + 2 * 3);
        assert_eq!(
            tp.parse_element("X²+2x+1").unwrap(),
            tp.parse_element("1+2X+X^2").unwrap()
        );
        assert_eq!(tp.parse_element("-1").unwrap(), tp.parse_element("2").unwrap());
        assert_eq!(tp.parse_element("#9").unwrap(), tp.parse_element("1").unwrap());
        assert!(tp.parse_element("X^3").is_err());
        assert!(tp.parse_element("5").is_err());

        let m = ring(RingSpec::matrix(RingSpec::zn(2), 2));
        assert_eq!(m.label(m.parse_element("E12").unwrap()), "[[0,1],[0,0]]");
        assert_eq!(m.parse_element("[[1, 0], [0, 1]]").unwrap(), m.unity().unwrap());
        assert!(m.parse_element("E31").is_err());

        let t = ring(RingSpec::tri_pattern(RingSpec::zn(2)));
        assert_eq!(t.label(t.parse_element("A").unwrap()), "[[1,1,1],[0,0,1],[0,0,1]]");
        assert!(t.parse_element("[[1,0,0],[1,0,0],[0,0,0]]").is_err());

        let z4 = ring(RingSpec::zn(4));
        assert!(matches!(z4.parse_element("7"), Err(Error::ParseElement { .. })));
        assert!(z4.parse_element("#7").is_err());
        assert!(z4.parse_element("").is_err());

        let p = ring(RingSpec::product(vec![RingSpec::zn(2), RingSpec::trunc_poly(3, 2)]));
        let e = p.parse_element("(1, 2+X)").unwrap();
        assert_eq!(p.label(e), "(1,2+X)");
        assert!(p.parse_element("(1)").is_err());
    }

    fn corpus_ring() -> impl Strategy<Value = RingSpec> {
        prop::sample::select(vec![
            RingSpec::zn(7),
            RingSpec::trunc_poly(3, 3),
            RingSpec::matrix(RingSpec::zn(2), 2),
            RingSpec::matrix(RingSpec::zn(3), 2),
            RingSpec::tri_pattern(RingSpec::zn(2)),
            RingSpec::product(vec![RingSpec::zn(2), RingSpec::zn(3)]),
            RingSpec::product(vec![RingSpec::matrix(RingSpec::zn(2), 1), RingSpec::zn(4)]),
        ])
    }

    proptest! {
        #[test]
        fn labels_round_trip(spec in corpus_ring(), pick in 0usize..4096) {
            let r = ring(spec);
            let x = r.elem(pick % r.size()).unwrap();
            prop_assert_eq!(r.parse_element(r.label(x)).unwrap(), x);
        }
    }
}
