use std::fmt;
use std::sync::Arc;

use crate::complexes::Complex;
use crate::error::{Error, Result};
use crate::Vertex;

/// An eventually constant simplicial map `Z → K`, stored on a finite window
/// `[start, start + samples.len() - 1]` and extended by constants outside it.
#[derive(Clone)]
pub struct MoorePath {
    target: Arc<Complex>,
    start: i64,
    samples: Vec<Vertex>,
}

impl fmt::Debug for MoorePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MoorePath(@{} {:?})", self.start, self.samples)
    }
}

/// Equality of the underlying maps `Z → K` (hence also of supports).
impl PartialEq for MoorePath {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.trimmed(), other.trimmed());
        a.start == b.start && a.samples == b.samples && *self.target == *other.target
    }
}

impl Eq for MoorePath {}

impl MoorePath {
    pub fn new(target: Arc<Complex>, start: i64, samples: Vec<Vertex>) -> Result<MoorePath> {
        if samples.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        for &v in &samples {
            target.idx(v)?;
        }
        for w in samples.windows(2) {
            if w[0] != w[1] && !target.is_simplex(&[w[0], w[1]]) {
                return Err(Error::InvalidPath(w[0], w[1]));
            }
        }
        Ok(MoorePath {
            target,
            start,
            samples,
        })
    }

    pub(crate) fn new_unchecked(
        target: Arc<Complex>,
        start: i64,
        samples: Vec<Vertex>,
    ) -> MoorePath {
        MoorePath {
            target,
            start,
            samples,
        }
    }

    /// The constant path `c_v`, stored on `[0, 0]`.
    pub fn constant(target: Arc<Complex>, v: Vertex) -> Result<MoorePath> {
        MoorePath::new(target, 0, vec![v])
    }

    pub fn target(&self) -> &Arc<Complex> {
        &self.target
    }

    pub fn window_start(&self) -> i64 {
        self.start
    }

    pub fn window_end(&self) -> i64 {
        self.start + self.samples.len() as i64 - 1
    }

    pub fn samples(&self) -> &[Vertex] {
        &self.samples
    }

    pub fn value_at(&self, i: i64) -> Vertex {
        let k = (i - self.start).clamp(0, self.samples.len() as i64 - 1);
        self.samples[k as usize]
    }

    pub fn is_constant(&self) -> bool {
        self.samples.windows(2).all(|w| w[0] == w[1])
    }

    /// `(γ⁻, γ⁺)`: the largest `i⁻` with `γ` constant on `(-∞, i⁻]` and the
    /// smallest `i⁺` with `γ` constant on `[i⁺, ∞)`. Constant paths give `(0, 0)`.
    pub fn support(&self) -> (i64, i64) {
        let s = &self.samples;
        let Some(first_change) = s.iter().position(|&v| v != s[0]) else {
            return (0, 0);
        };
        let last = *s.last().unwrap();
        let last_change = s.iter().rposition(|&v| v != last).unwrap();
        (
            self.start + first_change as i64 - 1,
            self.start + last_change as i64 + 1,
        )
    }

    /// `α(γ) = γ(γ⁻)`.
    pub fn alpha(&self) -> Vertex {
        self.samples[0]
    }

    /// `ω(γ) = γ(γ⁺)`.
    pub fn omega(&self) -> Vertex {
        *self.samples.last().unwrap()
    }

    /// Support length `γ⁺ − γ⁻`.
    pub fn length(&self) -> usize {
        let (lo, hi) = self.support();
        (hi - lo) as usize
    }

    /// The same path stored exactly on its support.
    pub fn trimmed(&self) -> MoorePath {
        let (lo, hi) = self.support();
        self.on_window(lo, hi).expect("support window")
    }

    /// Samples on `[a, b]`, if that window contains the support.
    pub fn samples_on(&self, a: i64, b: i64) -> Option<Vec<Vertex>> {
        let (lo, hi) = self.support();
        if a > b || (!self.is_constant() && (a > lo || b < hi)) {
            return None;
        }
        Some((a..=b).map(|i| self.value_at(i)).collect())
    }

    /// The same path stored on the window `[a, b]` (which must contain the support).
    pub fn on_window(&self, a: i64, b: i64) -> Option<MoorePath> {
        Some(MoorePath {
            target: self.target.clone(),
            start: a,
            samples: self.samples_on(a, b)?,
        })
    }

    /// `γ̄(i) = γ(−i)`.
    pub fn reverse(&self) -> MoorePath {
        let mut samples = self.samples.clone();
        samples.reverse();
        MoorePath {
            target: self.target.clone(),
            start: -self.window_end(),
            samples,
        }
    }

    /// `|γ|(i) = γ(i + γ⁻)`.
    pub fn normalize(&self) -> MoorePath {
        let t = self.trimmed();
        MoorePath { start: 0, ..t }
    }

    pub fn is_normalized(&self) -> bool {
        self.support().0 == 0
    }

    /// `γ ∗ δ`, defined when `ω(γ) = α(δ)`.
    pub fn concat(&self, delta: &MoorePath) -> Result<MoorePath> {
        if self.omega() != delta.alpha() {
            return Err(Error::EndpointMismatch {
                omega: self.omega(),
                alpha: delta.alpha(),
            });
        }
        if *self.target != *delta.target {
            return Err(Error::ShapeMismatch);
        }
        let (gm, gp) = self.support();
        let (dm, dp) = delta.support();
        let samples = (gm + dm..=gp + dp)
            .map(|i| {
                if i <= gp + dm {
                    self.value_at(i - dm)
                } else {
                    delta.value_at(i - gp)
                }
            })
            .collect();
        Ok(MoorePath {
            target: self.target.clone(),
            start: gm + dm,
            samples,
        })
    }

    /// `γ_i`: follows `γ` up to time `i` and stays at `γ(i)` afterwards.
    pub fn truncate(&self, i: i64) -> MoorePath {
        let stop = self.value_at(i);
        let samples = (self.start..=self.window_end())
            .map(|j| if j <= i { self.value_at(j) } else { stop })
            .collect();
        MoorePath {
            target: self.target.clone(),
            start: self.start,
            samples,
        }
    }
}
