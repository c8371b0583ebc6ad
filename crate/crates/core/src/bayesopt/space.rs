use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpaceError {
    #[error("dimension `{name}`: need finite low < high, got {low}..{high}")]
    Bounds { name: String, low: f64, high: f64 },
    #[error("dimension `{name}`: integer bounds must be integral")]
    NonIntegralBounds { name: String },
    #[error("search space has no dimensions")]
    Empty,
    #[error("expected a point with {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("dimension `{name}`: value {value} out of bounds")]
    OutOfBounds { name: String, value: f64 },
    #[error("dimension `{name}`: value {value} is not an integer")]
    NotIntegral { name: String, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimKind {
    Continuous,
    Integer,
}

/// One coordinate of the search space.
///
/// Continuous dimensions may have an open lower bound, in which case decoding
/// never returns `low` itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Dim {
    pub name: String,
    pub kind: DimKind,
    pub low: f64,
    pub high: f64,
    pub open_low: bool,
}

impl Dim {
    pub fn continuous(name: &str, low: f64, high: f64) -> Self {
        Self {
            name: name.to_owned(),
            kind: DimKind::Continuous,
            low,
            high,
            open_low: false,
        }
    }

    /// Continuous on `(low, high]`.
    pub fn continuous_open(name: &str, low: f64, high: f64) -> Self {
        Self {
            open_low: true,
            ..Self::continuous(name, low, high)
        }
    }

    pub fn integer(name: &str, low: i64, high: i64) -> Self {
        Self {
            name: name.to_owned(),
            kind: DimKind::Integer,
            low: low as f64,
            high: high as f64,
            open_low: false,
        }
    }

    fn validate(&self) -> Result<(), SpaceError> {
        if !(self.low.is_finite() && self.high.is_finite() && self.low < self.high) {
            return Err(SpaceError::Bounds {
                name: self.name.clone(),
                low: self.low,
                high: self.high,
            });
        }
        if self.kind == DimKind::Integer && (self.low.fract() != 0.0 || self.high.fract() != 0.0) {
            return Err(SpaceError::NonIntegralBounds {
                name: self.name.clone(),
            });
        }
        Ok(())
    }

    /// Smallest value decoding may produce on an open lower bound.
    fn open_floor(&self) -> f64 {
        self.low + 1e-6 * (self.high - self.low)
    }

    pub fn encode(&self, value: f64) -> Result<f64, SpaceError> {
        let below = if self.open_low { value <= self.low } else { value < self.low };
        if below || value > self.high || value.is_nan() {
            return Err(SpaceError::OutOfBounds {
                name: self.name.clone(),
                value,
            });
        }
        if self.kind == DimKind::Integer && value.fract() != 0.0 {
            return Err(SpaceError::NotIntegral {
                name: self.name.clone(),
                value,
            });
        }
        Ok((value - self.low) / (self.high - self.low))
    }

    /// Maps a unit coordinate back to original units. Coordinates outside
    /// `[0, 1]` are clamped; integer dimensions round to nearest, ties up.
    pub fn decode(&self, unit: f64) -> f64 {
        let u = unit.clamp(0.0, 1.0);
        let value = self.low + u * (self.high - self.low);
        match self.kind {
            DimKind::Integer => (value + 0.5).floor().clamp(self.low, self.high),
            DimKind::Continuous if self.open_low => value.max(self.open_floor()).min(self.high),
            DimKind::Continuous => value.min(self.high),
        }
    }
}

/// Ordered box of named dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    dims: Vec<Dim>,
}

impl SearchSpace {
    pub fn new(dims: Vec<Dim>) -> Result<Self, SpaceError> {
        if dims.is_empty() {
            return Err(SpaceError::Empty);
        }
        for d in &dims {
            d.validate()?;
        }
        Ok(Self { dims })
    }

    /// `t` continuous on (0, 20], `g` integer on [1, 128], `k` integer on [0, 256].
    pub fn sine_default() -> Self {
        Self::new(vec![
            Dim::continuous_open("t", 0.0, 20.0),
            Dim::integer("g", 1, 128),
            Dim::integer("k", 0, 256),
        ])
        .expect("default bounds are valid")
    }

    pub fn dims(&self) -> &[Dim] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn encode(&self, point: &[f64]) -> Result<Vec<f64>, SpaceError> {
        self.check_arity(point.len())?;
        self.dims.iter().zip(point).map(|(d, &v)| d.encode(v)).collect()
    }

    pub fn decode(&self, unit: &[f64]) -> Vec<f64> {
        assert_eq!(unit.len(), self.dims.len(), "unit vector arity");
        self.dims.iter().zip(unit).map(|(d, &u)| d.decode(u)).collect()
    }

    fn check_arity(&self, got: usize) -> Result<(), SpaceError> {
        if got == self.dims.len() {
            Ok(())
        } else {
            Err(SpaceError::Arity {
                expected: self.dims.len(),
                got,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn encode_decode_examples() {
        let space = SearchSpace::sine_default();
        let [t, g, k] = space.dims() else { unreachable!() };
        assert_eq!(t.encode(10.0).unwrap(), 0.5);
        assert_eq!(t.decode(0.5), 10.0);
        assert_eq!(g.decode(0.0), 1.0);
        assert_eq!(g.decode(1.0), 128.0);
        // 128.5 rounds up.
        assert_eq!(k.decode(128.5 / 256.0), 129.0);
        assert_eq!(k.decode(128.49 / 256.0), 128.0);
    }

    #[test]
    fn open_lower_bound_never_decodes_to_low() {
        let t = Dim::continuous_open("t", 0.0, 20.0);
        assert!(t.decode(0.0) > 0.0);
        assert!(t.decode(-3.0) > 0.0);
        assert!(t.encode(0.0).is_err());
        assert!(Dim::continuous("x", 0.0, 1.0).encode(0.0).is_ok());
    }

    #[test]
    fn rejects_bad_points_and_bounds() {
        let space = SearchSpace::sine_default();
        assert!(matches!(space.encode(&[1.0, 2.0]), Err(SpaceError::Arity { .. })));
        assert!(matches!(space.encode(&[21.0, 2.0, 3.0]), Err(SpaceError::OutOfBounds { .. })));
        assert!(matches!(space.encode(&[1.0, 0.0, 3.0]), Err(SpaceError::OutOfBounds { .. })));
        assert!(matches!(space.encode(&[1.0, 2.5, 3.0]), Err(SpaceError::NotIntegral { .. })));
        assert_eq!(SearchSpace::new(vec![]), Err(SpaceError::Empty));
        assert!(SearchSpace::new(vec![Dim::continuous("x", 1.0, 1.0)]).is_err());
        let mut d = Dim::integer("g", 0, 4);
        d.high = 4.5;
        assert!(SearchSpace::new(vec![d]).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(t in 1e-3f64..=20.0, g in 1i64..=128, k in 0i64..=256) {
            let space = SearchSpace::sine_default();
            let p = [t, g as f64, k as f64];
            let back = space.decode(&space.encode(&p).unwrap());
            prop_assert!((back[0] - t).abs() < 1e-12);
            prop_assert_eq!(back[1], g as f64);
            prop_assert_eq!(back[2], k as f64);
        }

        #[test]
        fn decode_stays_in_bounds(u in proptest::collection::vec(-0.5f64..1.5, 3)) {
            let space = SearchSpace::sine_default();
            let p = space.decode(&u);
            for (d, v) in space.dims().iter().zip(&p) {
                prop_assert!(*v <= d.high && *v >= d.low);
                if d.kind == DimKind::Integer {
                    prop_assert_eq!(v.fract(), 0.0);
                }
            }
            prop_assert!(p[0] > 0.0);
        }
    }
}
