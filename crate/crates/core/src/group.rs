//! The generalized Suzuki 2-group A_l(n, θ).
//!
//! Elements are tuples S(a_1, ..., a_l) of GF(2^n) coordinates with the
//! twisted product
//!
//! ```text
//! c_1 = a_1 + b_1
//! c_m = a_m + b_m + Σ_{j=1}^{m-1} θ^j(a_{m-j}) · b_j      (m = 2..l)
//! ```
//!
//! where θ^j is the j-fold Frobenius map. The group has order 2^(nl), the
//! identity is the all-zero tuple, and the center is exactly the set of
//! tuples whose first l-1 coordinates vanish. Inversion solves S(a)·S(x) = e
//! coordinate by coordinate (the system is triangular).

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use rand::Rng;
use std::fmt;

/// Group shape: base field plus number of coordinates l >= 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupParams {
    spec: FieldSpec,
    l: u32,
}

impl fmt::Debug for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A_{}({:?})", self.l, self.spec)
    }
}

impl GroupParams {
    pub fn new(spec: FieldSpec, l: u32) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidArgument(format!(
                "group needs at least 2 coordinates, got {l}"
            )));
        }
        Ok(GroupParams { spec, l })
    }

    pub fn field(&self) -> FieldSpec {
        self.spec
    }

    /// Number of coordinates l.
    pub fn coordinate_count(&self) -> u32 {
        self.l
    }

    /// Group order 2^(n·l).
    pub fn order(&self) -> u128 {
        1u128 << (self.spec.degree() * self.l)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![self.spec.zero(); self.l as usize],
        }
    }

    /// Uniform element of the whole group.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        GroupElement {
            coords: (0..self.l).map(|_| self.spec.random(rng)).collect(),
        }
    }

    /// Uniform element with every coordinate in F_q \ {0}. Such an element is
    /// never central (l >= 2 forces a nonzero non-final coordinate).
    pub fn random_all_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        GroupElement {
            coords: (0..self.l).map(|_| self.spec.random_nonzero(rng)).collect(),
        }
    }

    /// Parses the canonical `S(h1,h2,...)` text form.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let inner = text
            .strip_prefix("S(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, format!("expected S(...), got {text:?}")))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != self.l as usize {
            return Err(Error::parse(
                0,
                format!("expected {} coordinates, got {}", self.l, parts.len()),
            ));
        }
        let coords = parts
            .iter()
            .map(|p| self.spec.parse_element(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupElement { coords })
    }
}

/// A tuple S(a_1, ..., a_l). Coordinate 1 is stored first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    coords: Vec<FieldElement>,
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl GroupElement {
    /// Builds an element from its coordinates (at least 2, all in one field).
    pub fn new(coords: Vec<FieldElement>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "group element needs at least 2 coordinates, got {}",
                coords.len()
            )));
        }
        let spec = coords[0].spec();
        if coords.iter().any(|c| c.spec() != spec) {
            return Err(Error::InvalidArgument(
                "group element coordinates must share one field".into(),
            ));
        }
        Ok(GroupElement { coords })
    }

    /// The tuple with `value` at 1-based coordinate `k` and zeros elsewhere.
    pub fn embedded(params: GroupParams, k: u32, value: FieldElement) -> Result<Self> {
        if k == 0 || k > params.l {
            return Err(Error::IndexRange {
                index: k as u64,
                what: "coordinate",
                size: params.l as u64,
            });
        }
        if value.spec() != params.spec {
            return Err(Error::InvalidArgument(
                "embedded value must come from the group's field".into(),
            ));
        }
        let mut e = params.identity();
        e.coords[(k - 1) as usize] = value;
        Ok(e)
    }

    pub fn params(&self) -> GroupParams {
        GroupParams {
            spec: self.coords[0].spec(),
            l: self.coords.len() as u32,
        }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// 1-based coordinate access, matching the S(a_1, ..., a_l) convention.
    pub fn coord(&self, k: u32) -> FieldElement {
        self.coords[(k - 1) as usize]
    }

    /// Group product. Panics if the operands have different shapes.
    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        assert_eq!(
            self.params(),
            rhs.params(),
            "group elements from different groups must not mix"
        );
        let a = &self.coords;
        let b = &rhs.coords;
        let coords = (0..a.len())
            .map(|m| {
                let mut c = a[m] + b[m];
                for j in 1..=m {
                    c += a[m - j].frobenius_pow(j as u32) * b[j - 1];
                }
                c
            })
            .collect();
        GroupElement { coords }
    }

    /// Inverse by forward substitution: x_1 = a_1 and
    /// x_m = a_m + Σ_{j=1}^{m-1} θ^j(a_{m-j}) · x_j.
    pub fn inverse(&self) -> GroupElement {
        let a = &self.coords;
        let mut x: Vec<FieldElement> = Vec::with_capacity(a.len());
        for m in 0..a.len() {
            let mut v = a[m];
            for j in 1..=m {
                v += a[m - j].frobenius_pow(j as u32) * x[j - 1];
            }
            x.push(v);
        }
        GroupElement { coords: x }
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Center membership: all coordinates except the last vanish.
    pub fn is_central(&self) -> bool {
        self.coords[..self.coords.len() - 1]
            .iter()
            .all(|c| c.is_zero())
    }

    /// Ordered product of `factors`, or the identity when empty.
    pub fn product_of<'a>(
        params: GroupParams,
        factors: impl IntoIterator<Item = &'a GroupElement>,
    ) -> GroupElement {
        factors
            .into_iter()
            .fold(params.identity(), |acc, f| acc.mul(f))
    }

    /// Canonical text form `S(h1,h2,...)` with fixed-width hex coordinates.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_hex()).collect();
        format!("S({})", parts.join(","))
    }
}
