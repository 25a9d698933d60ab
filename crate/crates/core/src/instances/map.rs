use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::error::{OmegaError, Result};
use crate::group::{OmegaGroup, OperationDescriptor, SampleRng};

/// A total map from the points of a finite set into a target group,
/// stored as one value per point in the order of [`MapGroup::points`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapElem<E>(pub Vec<E>);

impl<E: fmt::Display> fmt::Display for MapElem<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `M(X, A)`: maps from a finite set `X` into `A` with pointwise operations
/// and the sup norm.
pub struct MapGroup<G: OmegaGroup> {
    points: Vec<String>,
    target: Arc<G>,
    ops: Vec<OperationDescriptor<MapElem<G::Elem>>>,
}

impl<G: OmegaGroup> fmt::Debug for MapGroup<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MapGroup")
            .field("points", &self.points)
            .field("target", &self.target.name())
            .finish()
    }
}

fn lift<E: Clone + Send + Sync + 'static>(op: &OperationDescriptor<E>) -> OperationDescriptor<MapElem<E>> {
    let inner = op.clone();
    OperationDescriptor::new(
        op.symbol(),
        op.arity(),
        op.norm_bound().clone(),
        move |args: &[MapElem<E>]| {
            let len = args[0].0.len();
            MapElem(
                (0..len)
                    .map(|x| {
                        let at_x: Vec<E> = args.iter().map(|f| f.0[x].clone()).collect();
                        inner.apply(&at_x)
                    })
                    .collect(),
            )
        },
    )
}

impl<G: OmegaGroup> MapGroup<G> {
    pub fn new(points: Vec<String>, target: Arc<G>) -> Result<Self> {
        if points.is_empty() {
            return Err(OmegaError::InvalidParameter("point set X must be nonempty".into()));
        }
        let unique: HashSet<&String> = points.iter().collect();
        if unique.len() != points.len() {
            return Err(OmegaError::InvalidParameter("point names must be distinct".into()));
        }
        let ops = target.ops().iter().map(lift).collect();
        Ok(MapGroup { points, target, ops })
    }

    /// Points named `x0 .. x{n-1}`.
    pub fn with_size(n: usize, target: Arc<G>) -> Result<Self> {
        Self::new((0..n).map(|i| format!("x{i}")).collect(), target)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn target(&self) -> &Arc<G> {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn from_fn(&self, f: impl Fn(usize) -> G::Elem) -> MapElem<G::Elem> {
        MapElem((0..self.points.len()).map(f).collect())
    }

    pub fn constant(&self, value: &G::Elem) -> MapElem<G::Elem> {
        self.from_fn(|_| value.clone())
    }

    pub fn eval<'a>(&self, f: &'a MapElem<G::Elem>, point: &str) -> Option<&'a G::Elem> {
        self.points.iter().position(|p| p == point).map(|i| &f.0[i])
    }
}

impl<G: OmegaGroup> OmegaGroup for MapGroup<G> {
    type Elem = MapElem<G::Elem>;

    fn name(&self) -> String {
        format!("map:{}:{}", self.points.len(), self.target.name())
    }

    fn zero(&self) -> Self::Elem {
        self.constant(&self.target.zero())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        MapElem(a.0.iter().zip(&b.0).map(|(x, y)| self.target.add(x, y)).collect())
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        MapElem(a.0.iter().map(|x| self.target.neg(x)).collect())
    }

    fn ops(&self) -> &[OperationDescriptor<Self::Elem>] {
        &self.ops
    }

    /// Maximum of the pointwise norms.
    fn norm_value(&self, a: &Self::Elem) -> BigRational {
        a.0.iter()
            .map(|x| self.target.norm_value(x))
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    fn sample(&self, rng: &mut SampleRng) -> Self::Elem {
        if rng.random_ratio(1, 10) {
            return self.zero();
        }
        MapElem((0..self.points.len()).map(|_| self.target.sample(rng)).collect())
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.0.len() == b.0.len() && a.0.iter().zip(&b.0).all(|(x, y)| self.target.equal(x, y))
    }
}
