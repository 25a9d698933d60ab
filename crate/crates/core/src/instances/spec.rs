use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use super::{MapGroup, MatrixRing, OctonionAlgebra, RationalAbs, RationalPadic};
use crate::error::{OmegaError, Result};
use crate::syntax::ElementSyntax;

/// A shipped instance, as named on the command line:
/// `q-abs`, `q-padic:<p>`, `matrix:<n>`, `octonion`, `map:<n-points>:<inner>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceSpec {
    RationalAbs,
    RationalPadic(u64),
    Matrix(usize),
    Octonion,
    Map(usize, Box<InstanceSpec>),
}

fn parse_number<T: FromStr>(text: &str, what: &str) -> Result<T> {
    text.parse()
        .map_err(|_| OmegaError::Parse(format!("{what} `{text}` is not a number")))
}

impl FromStr for InstanceSpec {
    type Err = OmegaError;

    fn from_str(s: &str) -> Result<Self> {
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        let spec = match (head, rest) {
            ("q-abs", None) => InstanceSpec::RationalAbs,
            ("octonion", None) => InstanceSpec::Octonion,
            ("q-padic", Some(p)) => InstanceSpec::RationalPadic(parse_number(p, "prime")?),
            ("matrix", Some(n)) => InstanceSpec::Matrix(parse_number(n, "dimension")?),
            ("map", Some(rest)) => {
                let (n, inner) = rest
                    .split_once(':')
                    .ok_or_else(|| OmegaError::Parse("expected map:<n-points>:<inner-spec>".into()))?;
                InstanceSpec::Map(parse_number(n, "point count")?, Box::new(inner.parse()?))
            }
            _ => return Err(OmegaError::Parse(format!("unknown instance `{s}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceSpec::RationalAbs => f.write_str("q-abs"),
            InstanceSpec::RationalPadic(p) => write!(f, "q-padic:{p}"),
            InstanceSpec::Matrix(n) => write!(f, "matrix:{n}"),
            InstanceSpec::Octonion => f.write_str("octonion"),
            InstanceSpec::Map(n, inner) => write!(f, "map:{n}:{inner}"),
        }
    }
}

/// Receives the concrete instance built from an [`InstanceSpec`].
pub trait InstanceVisitor {
    type Output;

    fn visit<G: ElementSyntax>(self, group: Arc<G>) -> Self::Output;
}

struct MapWrap<V> {
    points: usize,
    visitor: V,
}

impl<V: InstanceVisitor> InstanceVisitor for MapWrap<V> {
    type Output = Result<V::Output>;

    fn visit<G: ElementSyntax>(self, group: Arc<G>) -> Self::Output {
        let map = MapGroup::with_size(self.points, group)?;
        Ok(self.visitor.visit(Arc::new(map)))
    }
}

impl InstanceSpec {
    /// Checks parameters without building the instance.
    pub fn validate(&self) -> Result<()> {
        match self {
            InstanceSpec::RationalPadic(p) => RationalPadic::new(*p).map(|_| ()),
            InstanceSpec::Matrix(n) => MatrixRing::new(*n).map(|_| ()),
            InstanceSpec::Map(0, _) => Err(OmegaError::InvalidParameter("point set X must be nonempty".into())),
            InstanceSpec::Map(_, inner) if matches!(**inner, InstanceSpec::Map(..)) => {
                Err(OmegaError::Unsupported("nested map instances".into()))
            }
            InstanceSpec::Map(_, inner) => inner.validate(),
            InstanceSpec::RationalAbs | InstanceSpec::Octonion => Ok(()),
        }
    }

    /// Builds the instance and hands it to `visitor`.
    pub fn visit<V: InstanceVisitor>(&self, visitor: V) -> Result<V::Output> {
        match self {
            InstanceSpec::Map(n, inner) => inner.visit_base(MapWrap { points: *n, visitor })?,
            base => base.visit_base(visitor),
        }
    }

    fn visit_base<V: InstanceVisitor>(&self, visitor: V) -> Result<V::Output> {
        Ok(match self {
            InstanceSpec::RationalAbs => visitor.visit(Arc::new(RationalAbs::new())),
            InstanceSpec::RationalPadic(p) => visitor.visit(Arc::new(RationalPadic::new(*p)?)),
            InstanceSpec::Matrix(n) => visitor.visit(Arc::new(MatrixRing::new(*n)?)),
            InstanceSpec::Octonion => visitor.visit(Arc::new(OctonionAlgebra::new())),
            InstanceSpec::Map(..) => return Err(OmegaError::Unsupported("nested map instances".into())),
        })
    }
}
