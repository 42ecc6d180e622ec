use crate::error::{Error, Result};

/// Piecewise-linear function given by breakpoints with strictly increasing
/// coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    coords: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseLinear {
    pub fn new(breakpoints: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let (coords, values): (Vec<f64>, Vec<f64>) = breakpoints.into_iter().unzip();
        Self::from_parts(coords, values)
    }

    pub fn from_parts(coords: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if coords.len() != values.len() {
            return Err(Error::LengthMismatch {
                times: coords.len(),
                values: values.len(),
            });
        }
        if coords.len() < 2 {
            return Err(Error::InsufficientData {
                what: "breakpoints",
                needed: 2,
                got: coords.len(),
            });
        }
        for (index, (&c, &v)) in coords.iter().zip(&values).enumerate() {
            if !c.is_finite() || !v.is_finite() {
                return Err(Error::NonFinite { index });
            }
        }
        for (index, w) in coords.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::Ordering {
                    index: index + 1,
                    previous: w[0],
                    current: w[1],
                });
            }
        }
        Ok(Self { coords, values })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.coords.iter().copied().zip(self.values.iter().copied())
    }

    pub fn support(&self) -> (f64, f64) {
        (self.coords[0], self.coords[self.coords.len() - 1])
    }

    fn range_error(&self, coordinate: f64) -> Error {
        let (lo, hi) = self.support();
        Error::Range { coordinate, lo, hi }
    }

    /// Value at breakpoint `i` or on segment `[i, i+1]`. `i` must be the
    /// largest index with `coords[i] <= u`.
    #[inline]
    fn at(&self, i: usize, u: f64) -> Result<f64> {
        if u == self.coords[i] {
            return Ok(self.values[i]);
        }
        if i + 1 == self.coords.len() {
            return Err(self.range_error(u));
        }
        let (c0, c1) = (self.coords[i], self.coords[i + 1]);
        let (v0, v1) = (self.values[i], self.values[i + 1]);
        Ok(v0 + (v1 - v0) * ((u - c0) / (c1 - c0)))
    }

    pub fn eval(&self, u: f64) -> Result<f64> {
        let p = self.coords.partition_point(|&c| c <= u);
        if p == 0 {
            return Err(self.range_error(u));
        }
        self.at(p - 1, u)
    }

    /// Evaluate at non-decreasing coordinates with a single forward sweep.
    /// Results are identical to calling [`eval`](Self::eval) per coordinate.
    pub fn eval_sorted(&self, us: &[f64]) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(us.len());
        let mut i = 0;
        let mut last = f64::NEG_INFINITY;
        for &u in us {
            if !(u >= last) {
                return self.eval_all(us);
            }
            last = u;
            if u < self.coords[0] {
                return Err(self.range_error(u));
            }
            while i + 1 < self.coords.len() && self.coords[i + 1] <= u {
                i += 1;
            }
            out.push(self.at(i, u)?);
        }
        Ok(out)
    }

    fn eval_all(&self, us: &[f64]) -> Result<Vec<f64>> {
        us.iter().map(|&u| self.eval(u)).collect()
    }

    /// Pointwise combination `f(self(u), other(u))` on the union of both
    /// breakpoint sets, restricted to the intersection of the supports.
    /// Exact for any `f` that is affine in its arguments.
    pub fn combine(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let coords = union_coords(&[self, other])?;
        let a = self.eval_sorted(&coords)?;
        let b = other.eval_sorted(&coords)?;
        let values = a.into_iter().zip(b).map(|(x, y)| f(x, y)).collect();
        Self::from_parts(coords, values)
    }
}

/// Merged breakpoint coordinates of several functions, clipped to the
/// intersection of their supports (whose ends are always included).
pub fn union_coords(functions: &[&PiecewiseLinear]) -> Result<Vec<f64>> {
    let lo = functions
        .iter()
        .map(|f| f.support().0)
        .fold(f64::NEG_INFINITY, f64::max);
    let hi = functions
        .iter()
        .map(|f| f.support().1)
        .fold(f64::INFINITY, f64::min);
    if !(lo < hi) {
        return Err(Error::Range {
            coordinate: lo,
            lo,
            hi,
        });
    }
    let mut coords: Vec<f64> = functions
        .iter()
        .flat_map(|f| f.coords().iter().copied())
        .filter(|&c| c > lo && c < hi)
        .collect();
    coords.push(lo);
    coords.push(hi);
    coords.sort_by(f64::total_cmp);
    coords.dedup();
    Ok(coords)
}
