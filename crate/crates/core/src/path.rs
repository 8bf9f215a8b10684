//! Exactly evaluable piecewise paths `[0, 1] -> configurations`.

use std::sync::Arc;

use crate::config::Configuration;
use crate::deform::Homotopy;
use crate::error::{Error, Result};

/// Endpoint agreement required when concatenating paths.
pub const ENDPOINT_TOLERANCE: f64 = 1e-12;

/// How a segment moves over its local parameter `s` in `[0, 1]`.
#[derive(Debug, Clone)]
pub enum Motion {
    /// Straight-line motion; coordinates equal at both ends stay constant.
    Affine {
        from: Configuration,
        to: Configuration,
    },
    /// Plays `deformation` on `base`, from `t = 0` to `t = 1` or reversed.
    Deform {
        deformation: Arc<dyn Homotopy>,
        base: Configuration,
        reverse: bool,
    },
    /// Plays `path` over its parameter window `[from, to]`.
    Sub {
        path: Arc<PiecewisePath>,
        from: f64,
        to: f64,
    },
}

impl Motion {
    fn eval(&self, s: f64) -> Result<Configuration> {
        match self {
            Motion::Affine { from, to } => Ok(lerp(from, to, s)),
            Motion::Deform {
                deformation,
                base,
                reverse,
            } => {
                let t = if *reverse { 1.0 - s } else { s };
                deformation.eval(base, t)
            }
            Motion::Sub { path, from, to } => path.eval(mix(*from, *to, s)),
        }
    }
}

// Exact at s = 0 and s = 1, constant when a == b.
fn mix(a: f64, b: f64, s: f64) -> f64 {
    if a == b {
        a
    } else {
        (1.0 - s) * a + s * b
    }
}

fn lerp(a: &Configuration, b: &Configuration, s: f64) -> Configuration {
    let coords = a
        .coords()
        .iter()
        .zip(b.coords())
        .map(|(&x, &y)| mix(x, y, s))
        .collect();
    Configuration::from_flat(a.dim(), coords)
}

#[derive(Debug, Clone)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    pub motion: Motion,
}

impl Segment {
    fn local(&self, tau: f64) -> f64 {
        if tau <= self.start {
            0.0
        } else if tau >= self.end {
            1.0
        } else {
            ((tau - self.start) / (self.end - self.start)).clamp(0.0, 1.0)
        }
    }
}

/// Segments partitioning `[0, 1]`. Each interval is closed on the left; the last
/// one is also closed on the right.
#[derive(Debug, Clone)]
pub struct PiecewisePath {
    segments: Vec<Segment>,
}

impl PiecewisePath {
    /// Builds a path from segments; their intervals must tile `[0, 1]` in order.
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        let tiled = !segments.is_empty()
            && segments[0].start == 0.0
            && segments.last().unwrap().end == 1.0
            && segments.windows(2).all(|w| w[0].end == w[1].start)
            && segments.iter().all(|s| s.start < s.end);
        if !tiled {
            return Err(Error::InvalidProblem(
                "path segments must tile [0, 1] without gaps or overlaps".into(),
            ));
        }
        Ok(Self { segments })
    }

    pub fn constant(c: Configuration) -> Self {
        Self::single(Motion::Affine {
            from: c.clone(),
            to: c,
        })
    }

    pub fn single(motion: Motion) -> Self {
        Self {
            segments: vec![Segment {
                start: 0.0,
                end: 1.0,
                motion,
            }],
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn eval(&self, tau: f64) -> Result<Configuration> {
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::ParameterOutOfRange(tau));
        }
        let idx = self
            .segments
            .partition_point(|s| s.end <= tau)
            .min(self.segments.len() - 1);
        let seg = &self.segments[idx];
        seg.motion.eval(seg.local(tau))
    }

    pub fn start(&self) -> Result<Configuration> {
        self.eval(0.0)
    }

    pub fn end(&self) -> Result<Configuration> {
        self.eval(1.0)
    }

    /// All breakpoints in `[0, 1]`, including those of nested sub-paths, sorted.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut out = vec![0.0];
        for seg in &self.segments {
            if let Motion::Sub { path, from, to } = &seg.motion {
                let (lo, hi) = (from.min(*to), from.max(*to));
                for b in path.breakpoints() {
                    if b > lo && b < hi {
                        let s = (b - from) / (to - from);
                        out.push(seg.start + s * (seg.end - seg.start));
                    }
                }
            }
            out.push(seg.end);
        }
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    /// Affine reparametrization of this path's segments onto `[lo, hi]`.
    fn rescaled(&self, lo_num: usize, denom: usize) -> impl Iterator<Item = Segment> + '_ {
        let d = denom as f64;
        self.segments.iter().map(move |s| Segment {
            start: rescale(lo_num, denom, s.start, d),
            end: rescale(lo_num, denom, s.end, d),
            motion: s.motion.clone(),
        })
    }
}

// (m + x) / denom, exact at the sub-interval ends.
fn rescale(m: usize, denom: usize, x: f64, d: f64) -> f64 {
    if x == 0.0 {
        m as f64 / d
    } else if x == 1.0 {
        (m + 1) as f64 / denom as f64
    } else {
        (m as f64 + x) / d
    }
}

/// Concatenates paths on equal sub-intervals of `[0, 1]`.
pub fn concat_paths(paths: &[PiecewisePath]) -> Result<PiecewisePath> {
    if paths.is_empty() {
        return Err(Error::InvalidProblem(
            "cannot concatenate zero paths".into(),
        ));
    }
    for (i, w) in paths.windows(2).enumerate() {
        let gap = w[0].end()?.max_abs_diff(&w[1].start()?);
        if gap > ENDPOINT_TOLERANCE {
            return Err(Error::EndpointMismatch { index: i + 1, gap });
        }
    }
    let count = paths.len();
    let segments = paths
        .iter()
        .enumerate()
        .flat_map(|(m, p)| p.rescaled(m, count))
        .collect();
    PiecewisePath::new(segments)
}
