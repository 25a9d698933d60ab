use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::sample_rational;
use crate::error::{OmegaError, Result};
use crate::group::{OmegaGroup, OperationDescriptor, SampleRng};
use crate::scalar::Scalar;

/// Lines of the Fano plane: `e_i e_j = e_k` for each cyclic rotation of `(i, j, k)`.
const TRIPLES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 7, 6],
    [2, 4, 6],
    [2, 5, 7],
    [3, 4, 7],
    [3, 6, 5],
];

/// `e_i e_j = sign · e_k`, returned as `(sign, k)`.
pub fn basis_product(i: usize, j: usize) -> (i8, usize) {
    assert!(i < 8 && j < 8, "octonion basis index out of range");
    if i == 0 {
        return (1, j);
    }
    if j == 0 {
        return (1, i);
    }
    if i == j {
        return (-1, 0);
    }
    for t in TRIPLES {
        for r in 0..3 {
            let (a, b, c) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
            if (a, b) == (i, j) {
                return (1, c);
            }
            if (b, a) == (i, j) {
                return (-1, c);
            }
        }
    }
    unreachable!("every pair of imaginary units lies on one line")
}

/// Octonion with rational coordinates over the basis `e0..e7`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Octonion(pub [BigRational; 8]);

impl Octonion {
    pub fn zero() -> Self {
        Octonion(std::array::from_fn(|_| BigRational::zero()))
    }

    pub fn basis(i: usize) -> Self {
        let mut o = Octonion::zero();
        o.0[i] = BigRational::one();
        o
    }

    pub fn mul(&self, other: &Octonion) -> Octonion {
        let mut out = Octonion::zero();
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (sign, k) = basis_product(i, j);
                let term = a * b;
                if sign > 0 {
                    out.0[k] += term;
                } else {
                    out.0[k] -= term;
                }
            }
        }
        out
    }

    /// Sum of absolute coordinates.
    pub fn one_norm(&self) -> BigRational {
        self.0.iter().map(|x| x.abs()).sum()
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if wrote {
                f.write_str(if negative { "-" } else { "+" })?;
            } else if negative {
                f.write_str("-")?;
            }
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "e{i}")?,
                (_, false) => write!(f, "{mag}*e{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| OmegaError::Parse(format!("bad rational `{s}`")))
}

/// Accepts `[c0,...,c7]` or a signed sum of terms `c`, `e3`, `c*e3`.
impl FromStr for Octonion {
    type Err = OmegaError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coords: Vec<BigRational> = inner.split(',').map(parse_rational).collect::<Result<_>>()?;
            let coords: [BigRational; 8] = coords
                .try_into()
                .map_err(|_| OmegaError::Parse(format!("octonion `{s}` needs 8 coordinates")))?;
            return Ok(Octonion(coords));
        }
        if s.is_empty() {
            return Err(OmegaError::Parse("empty octonion".into()));
        }
        let mut out = Octonion::zero();
        let mut rest = s;
        while !rest.is_empty() {
            let (negative, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body[1.min(body.len())..]
                .find(['+', '-'])
                .map(|p| p + 1)
                .unwrap_or(body.len());
            let term = body[..end].trim();
            rest = &body[end..];
            let (coef, index) = match term.find('e') {
                Some(pos) => {
                    let idx: usize = term[pos + 1..]
                        .parse()
                        .ok()
                        .filter(|i| *i < 8)
                        .ok_or_else(|| OmegaError::Parse(format!("bad basis element in `{term}`")))?;
                    let coef = term[..pos].trim_end_matches('*');
                    let coef = if coef.is_empty() {
                        BigRational::one()
                    } else {
                        parse_rational(coef)?
                    };
                    (coef, idx)
                }
                None => (parse_rational(term)?, 0),
            };
            if negative {
                out.0[index] -= coef;
            } else {
                out.0[index] += coef;
            }
        }
        Ok(out)
    }
}

/// Octonions with the coordinate 1-norm and the Cayley product.
#[derive(Debug, Clone)]
pub struct OctonionAlgebra {
    ops: Vec<OperationDescriptor<Octonion>>,
}

impl OctonionAlgebra {
    pub fn new() -> Self {
        let mul = OperationDescriptor::new("mul", 2, Scalar::one(), |a: &[Octonion]| a[0].mul(&a[1]));
        OctonionAlgebra { ops: vec![mul] }
    }
}

impl Default for OctonionAlgebra {
    fn default() -> Self {
        Self::new()
    }
}

impl OmegaGroup for OctonionAlgebra {
    type Elem = Octonion;

    fn name(&self) -> String {
        "octonion".into()
    }

    fn zero(&self) -> Octonion {
        Octonion::zero()
    }

    fn add(&self, a: &Octonion, b: &Octonion) -> Octonion {
        Octonion(std::array::from_fn(|i| &a.0[i] + &b.0[i]))
    }

    fn neg(&self, a: &Octonion) -> Octonion {
        Octonion(std::array::from_fn(|i| -&a.0[i]))
    }

    fn ops(&self) -> &[OperationDescriptor<Octonion>] {
        &self.ops
    }

    fn norm_value(&self, a: &Octonion) -> BigRational {
        a.one_norm()
    }

    /// Mixes dense samples with signed multiples of a single basis element.
    fn sample(&self, rng: &mut SampleRng) -> Octonion {
        match rng.random_range(0..10) {
            0 => Octonion::zero(),
            1..=3 => {
                let mut o = Octonion::zero();
                let i = rng.random_range(0..8);
                let c: i64 = rng.random_range(-3..=3);
                o.0[i] = BigRational::from_integer(BigInt::from(c));
                o
            }
            _ => Octonion(std::array::from_fn(|_| sample_rational(rng))),
        }
    }
}

/// Three octonions whose products associate differently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonassociativityWitness {
    pub a: Octonion,
    pub b: Octonion,
    pub c: Octonion,
    /// `(ab)c`
    pub left: Octonion,
    /// `a(bc)`
    pub right: Octonion,
}

/// Searches basis triples for a failure of associativity.
pub fn octonion_nonassociativity_witness() -> NonassociativityWitness {
    for i in 1..8 {
        for j in 1..8 {
            for k in 1..8 {
                let (a, b, c) = (Octonion::basis(i), Octonion::basis(j), Octonion::basis(k));
                let left = a.mul(&b).mul(&c);
                let right = a.mul(&b.mul(&c));
                if left != right {
                    return NonassociativityWitness { a, b, c, left, right };
                }
            }
        }
    }
    unreachable!("the octonion product is nonassociative")
}
