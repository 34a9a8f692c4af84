use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    StrictlyIncreasing,
    StrictlyDecreasing,
    Constant,
    Mixed,
}

/// Continuous piecewise-linear function on `[breakpoints[0], last]`,
/// linear between consecutive breakpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPl", into = "RawPl")]
pub struct PlFunction {
    xs: Vec<BigRational>,
    ys: Vec<BigRational>,
}

#[derive(Serialize, Deserialize)]
struct RawPl {
    #[serde(with = "rational_vec")]
    breakpoints: Vec<BigRational>,
    #[serde(with = "rational_vec")]
    values: Vec<BigRational>,
}

impl TryFrom<RawPl> for PlFunction {
    type Error = Error;
    fn try_from(r: RawPl) -> Result<Self> {
        PlFunction::new(r.breakpoints, r.values)
    }
}

impl From<PlFunction> for RawPl {
    fn from(f: PlFunction) -> Self {
        RawPl { breakpoints: f.xs, values: f.ys }
    }
}

impl fmt::Display for PlFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.xs.iter().zip(&self.ys).map(|(x, y)| format!("({x}, {y})")).collect();
        write!(f, "PL[{}]", pts.join(" "))
    }
}

impl PlFunction {
    pub fn new(xs: Vec<BigRational>, ys: Vec<BigRational>) -> Result<Self> {
        if xs.len() < 2 || xs.len() != ys.len() {
            return Err(Error::structural(format!(
                "piecewise-linear function needs at least two breakpoints and one value each \
                 (got {} breakpoints, {} values)",
                xs.len(),
                ys.len()
            )));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::structural("breakpoints must be strictly increasing"));
        }
        Ok(PlFunction { xs, ys })
    }

    /// `x -> slope * x + intercept` on `[lo, hi]`.
    pub fn affine(lo: BigRational, hi: BigRational, slope: BigRational, intercept: BigRational) -> Result<Self> {
        let ylo = &slope * &lo + &intercept;
        let yhi = &slope * &hi + &intercept;
        Self::new(vec![lo, hi], vec![ylo, yhi])
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.xs
    }

    pub fn values(&self) -> &[BigRational] {
        &self.ys
    }

    pub fn lo(&self) -> &BigRational {
        &self.xs[0]
    }

    pub fn hi(&self) -> &BigRational {
        self.xs.last().unwrap()
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        if x < self.lo() || x > self.hi() {
            return Err(Error::structural(format!(
                "{x} lies outside the domain [{}, {}]",
                self.lo(),
                self.hi()
            )));
        }
        let i = match self.xs.binary_search(x) {
            Ok(i) => return Ok(self.ys[i].clone()),
            Err(i) => i,
        };
        let (x0, x1, y0, y1) = (&self.xs[i - 1], &self.xs[i], &self.ys[i - 1], &self.ys[i]);
        Ok(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
    }

    /// Slopes of the segments, left to right.
    pub fn slopes(&self) -> Vec<BigRational> {
        (1..self.xs.len())
            .map(|i| (&self.ys[i] - &self.ys[i - 1]) / (&self.xs[i] - &self.xs[i - 1]))
            .collect()
    }

    pub fn monotonicity(&self) -> Monotonicity {
        let s = self.slopes();
        if s.iter().all(|m| m.is_positive()) {
            Monotonicity::StrictlyIncreasing
        } else if s.iter().all(|m| m.is_negative()) {
            Monotonicity::StrictlyDecreasing
        } else if s.iter().all(|m| m.is_zero()) {
            Monotonicity::Constant
        } else {
            Monotonicity::Mixed
        }
    }

    /// Weakly increasing (no negative slope).
    pub fn is_nondecreasing(&self) -> bool {
        self.slopes().iter().all(|m| !m.is_negative())
    }

    /// The same function on `[lo, hi]`, a subinterval of the domain.
    pub fn restrict(&self, lo: &BigRational, hi: &BigRational) -> Result<Self> {
        if lo >= hi || lo < self.lo() || hi > self.hi() {
            return Err(Error::structural(format!("cannot restrict to [{lo}, {hi}]")));
        }
        let mut xs = vec![lo.clone()];
        xs.extend(self.xs.iter().filter(|x| *x > lo && *x < hi).cloned());
        xs.push(hi.clone());
        let ys = xs.iter().map(|x| self.eval(x)).collect::<Result<Vec<_>>>()?;
        Self::new(xs, ys)
    }

    /// `x -> max(self(x), c)`, with the crossing points as new breakpoints.
    pub fn max_with(&self, c: &BigRational) -> Self {
        let mut xs = vec![self.xs[0].clone()];
        for i in 1..self.xs.len() {
            let (x0, x1, y0, y1) = (&self.xs[i - 1], &self.xs[i], &self.ys[i - 1], &self.ys[i]);
            if (y0 < c && y1 > c) || (y0 > c && y1 < c) {
                xs.push(x0 + (c - y0) * (x1 - x0) / (y1 - y0));
            }
            xs.push(x1.clone());
        }
        let ys = xs
            .iter()
            .map(|x| {
                let y = self.eval(x).expect("breakpoint inside the domain");
                if &y < c {
                    c.clone()
                } else {
                    y
                }
            })
            .collect();
        PlFunction { xs, ys }
    }

    /// Largest and smallest value (attained at breakpoints).
    pub fn max_value(&self) -> &BigRational {
        self.ys.iter().max().unwrap()
    }

    pub fn min_value(&self) -> &BigRational {
        self.ys.iter().min().unwrap()
    }
}
