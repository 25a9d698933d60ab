//! Textual element literals and named completion points for the shipped
//! instances.

use std::str::FromStr;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{OmegaError, Result};
use crate::group::OmegaGroup;
use crate::instances::{
    ColumnVectors, MapElem, MapGroup, Matrix, MatrixRing, Octonion, OctonionAlgebra, RationalAbs, RationalPadic, Vector,
};
use crate::sequences::catalog::{babylonian_sqrt, bisection_sqrt, geometric_series, hensel_sqrt};
use crate::sequences::CauchySequence;

/// A group whose elements can be written and read back.
pub trait ElementSyntax: OmegaGroup {
    fn parse_element(&self, text: &str) -> Result<Self::Elem>;

    /// The element as a rational number, for instances whose elements are rationals.
    fn as_rational(&self, elem: &Self::Elem) -> Option<BigRational> {
        let _ = elem;
        None
    }

    /// A named point of the completion such as `sqrt:2`.
    fn named_element(group: &Arc<Self>, kind: &str, arg: &str) -> Result<CauchySequence<Self>>
    where
        Self: Sized,
    {
        let _ = (group, arg);
        Err(OmegaError::Unsupported(format!("`{kind}` in {}", group.name())))
    }
}

/// Splits on top-level commas, ignoring those nested in brackets or parentheses.
pub fn split_top_level(text: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(OmegaError::Parse(format!("unbalanced brackets in `{text}`")));
                }
            }
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(OmegaError::Parse(format!("unbalanced brackets in `{text}`")));
    }
    parts.push(text[start..].trim());
    Ok(parts)
}

fn bracketed(text: &str) -> Result<&str> {
    text.trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| OmegaError::Parse(format!("expected `[...]`, got `{text}`")))
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    BigRational::from_str(text.trim()).map_err(|_| OmegaError::Parse(format!("bad rational `{}`", text.trim())))
}

fn parse_vector(text: &str, dim: usize) -> Result<Vec<BigRational>> {
    let coords: Vec<BigRational> = split_top_level(bracketed(text)?)?
        .into_iter()
        .map(parse_rational)
        .collect::<Result<_>>()?;
    if coords.len() != dim {
        return Err(OmegaError::Parse(format!(
            "expected {dim} entries in `{text}`, got {}",
            coords.len()
        )));
    }
    Ok(coords)
}

fn rational_named<G: OmegaGroup<Elem = BigRational>>(
    group: &Arc<G>,
    kind: &str,
    arg: &str,
) -> Result<CauchySequence<G>> {
    match kind {
        "geom" => geometric_series(Arc::clone(group), parse_rational(arg)?),
        _ => Err(OmegaError::Unsupported(format!("`{kind}` in {}", group.name()))),
    }
}

impl ElementSyntax for RationalAbs {
    fn parse_element(&self, text: &str) -> Result<BigRational> {
        parse_rational(text)
    }

    fn as_rational(&self, elem: &BigRational) -> Option<BigRational> {
        Some(elem.clone())
    }

    fn named_element(group: &Arc<Self>, kind: &str, arg: &str) -> Result<CauchySequence<Self>> {
        match kind {
            "sqrt" => babylonian_sqrt(Arc::clone(group), parse_rational(arg)?),
            "sqrt-bisect" => bisection_sqrt(Arc::clone(group), parse_rational(arg)?),
            _ => rational_named(group, kind, arg),
        }
    }
}

impl ElementSyntax for RationalPadic {
    fn parse_element(&self, text: &str) -> Result<BigRational> {
        parse_rational(text)
    }

    fn as_rational(&self, elem: &BigRational) -> Option<BigRational> {
        Some(elem.clone())
    }

    /// `padic-sqrt` takes `q` or `q@p`; a given `p` must match the instance.
    fn named_element(group: &Arc<Self>, kind: &str, arg: &str) -> Result<CauchySequence<Self>> {
        match kind {
            "padic-sqrt" => {
                let radicand = match arg.split_once('@') {
                    Some((q, p)) => {
                        let p: u64 = p
                            .trim()
                            .parse()
                            .map_err(|_| OmegaError::Parse(format!("bad prime `{p}`")))?;
                        if p != group.prime() {
                            return Err(OmegaError::InvalidParameter(format!(
                                "prime {p} does not match instance prime {}",
                                group.prime()
                            )));
                        }
                        q
                    }
                    None => arg,
                };
                hensel_sqrt(Arc::clone(group), parse_rational(radicand)?)
            }
            _ => rational_named(group, kind, arg),
        }
    }
}

/// `[[a,b],[c,d]]`.
impl ElementSyntax for MatrixRing {
    fn parse_element(&self, text: &str) -> Result<Matrix> {
        let rows = split_top_level(bracketed(text)?)?
            .into_iter()
            .map(|row| parse_vector(row, self.dim()))
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != self.dim() {
            return Err(OmegaError::Parse(format!("expected {} rows in `{text}`", self.dim())));
        }
        Matrix::from_rows(rows)
    }
}

/// `[a,b,c]`.
impl ElementSyntax for ColumnVectors {
    fn parse_element(&self, text: &str) -> Result<Vector> {
        parse_vector(text, self.dim()).map(Vector)
    }
}

/// `e3`, `1-2*e5`, or `[c0,...,c7]`.
impl ElementSyntax for OctonionAlgebra {
    fn parse_element(&self, text: &str) -> Result<Octonion> {
        text.parse()
    }
}

/// `[v0, v1, ...]`, one value per point.
impl<G: ElementSyntax> ElementSyntax for MapGroup<G> {
    fn parse_element(&self, text: &str) -> Result<MapElem<G::Elem>> {
        let values = split_top_level(bracketed(text)?)?
            .into_iter()
            .map(|v| self.target().parse_element(v))
            .collect::<Result<Vec<_>>>()?;
        if values.len() != self.len() {
            return Err(OmegaError::Parse(format!(
                "expected {} values in `{text}`, got {}",
                self.len(),
                values.len()
            )));
        }
        Ok(MapElem(values))
    }
}
