use std::f64::consts::PI;

use crate::algebra::{basis::DIM, G2Structure, KForm};
use crate::error::{G2Error, Result};

use super::connection::U1Connection;
use super::ext::ExtForm;
use super::subtorus::AffineSubtorus;

/// A point (N, A) of the configuration space.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclePoint {
    pub torus: AffineSubtorus,
    pub connection: U1Connection,
}

impl CyclePoint {
    pub fn new(torus: AffineSubtorus, connection: U1Connection) -> Result<Self> {
        if torus.dim() != connection.dim() {
            return Err(G2Error::DimensionMismatch {
                expected: torus.dim(),
                got: connection.dim(),
            });
        }
        Ok(CyclePoint { torus, connection })
    }

    pub fn flat(torus: AffineSubtorus) -> Self {
        let k = torus.dim();
        CyclePoint {
            torus,
            connection: U1Connection::flat(vec![0.0; k]),
        }
    }

    pub fn dim(&self) -> usize {
        self.torus.dim()
    }

    /// Base point of this point's component: same spanning set and curvature,
    /// zero offset and zero holonomy.
    pub fn base(&self) -> CyclePoint {
        CyclePoint {
            torus: self.torus.with_offset([0.0; DIM]),
            connection: self.connection.with_holonomy(vec![0.0; self.dim()]),
        }
    }

    pub fn translated(&self, v: &[f64]) -> Self {
        CyclePoint {
            torus: self.torus.translated(v),
            connection: self.connection.clone(),
        }
    }

    pub fn shift_holonomy(&self, delta: &[f64]) -> Self {
        CyclePoint {
            torus: self.torus.clone(),
            connection: self.connection.shift_holonomy(delta),
        }
    }
}

/// Kind of a straight segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentKind {
    Constant,
    Translation,
    Connection,
    Combined,
}

/// A tangent direction at a configuration point: a normal translation X, a
/// holonomy velocity h′ and a curvature velocity f′ (transverse when nonzero).
#[derive(Clone, Debug, PartialEq)]
pub struct Variation {
    pub translation: Vec<f64>,
    pub holonomy: Vec<f64>,
    pub curvature: ExtForm,
}

impl Variation {
    pub fn zero(k: usize) -> Self {
        Variation {
            translation: vec![0.0; DIM],
            holonomy: vec![0.0; k],
            curvature: ExtForm::zero(k),
        }
    }

    pub fn translation(k: usize, v: Vec<f64>) -> Self {
        Variation {
            translation: v,
            ..Self::zero(k)
        }
    }

    pub fn holonomy(k: usize, a: usize) -> Self {
        let mut h = vec![0.0; k];
        h[a] = 1.0;
        Variation {
            holonomy: h,
            ..Self::zero(k)
        }
    }
}

/// Piecewise-straight path through configuration points sharing one
/// spanning set; each segment interpolates offset, holonomy and curvature
/// linearly.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclePath {
    points: Vec<CyclePoint>,
    allow_transverse: bool,
}

impl CyclePath {
    pub fn new(points: Vec<CyclePoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(G2Error::InvalidSubtorus(
                "a path needs at least two points".into(),
            ));
        }
        let first = &points[0];
        for p in &points[1..] {
            if !p.torus.same_spanning(&first.torus) {
                return Err(G2Error::InvalidSubtorus(
                    "path points must share one spanning set".into(),
                ));
            }
            if p.dim() != first.dim() {
                return Err(G2Error::DimensionMismatch {
                    expected: first.dim(),
                    got: p.dim(),
                });
            }
        }
        Ok(CyclePath {
            points,
            allow_transverse: false,
        })
    }

    pub fn straight(start: CyclePoint, end: CyclePoint) -> Result<Self> {
        Self::new(vec![start, end])
    }

    /// Straight path from the component base point to `p`.
    pub fn from_base(p: &CyclePoint) -> Result<Self> {
        Self::straight(p.base(), p.clone())
    }

    /// Permit non-integral curvature at waypoints; such paths leave the
    /// configuration space and only test formulas.
    pub fn allowing_transverse(mut self) -> Self {
        self.allow_transverse = true;
        self
    }

    pub fn points(&self) -> &[CyclePoint] {
        &self.points
    }

    pub fn start(&self) -> &CyclePoint {
        &self.points[0]
    }

    pub fn end(&self) -> &CyclePoint {
        self.points.last().expect("nonempty")
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn segment_kinds(&self) -> Vec<SegmentKind> {
        self.segments()
            .map(|s| {
                let moves = s.variation.translation.iter().any(|x| *x != 0.0);
                let conn = s.variation.holonomy.iter().any(|x| *x != 0.0)
                    || s.variation.curvature.max_abs() != 0.0;
                match (moves, conn) {
                    (false, false) => SegmentKind::Constant,
                    (true, false) => SegmentKind::Translation,
                    (false, true) => SegmentKind::Connection,
                    (true, true) => SegmentKind::Combined,
                }
            })
            .collect()
    }

    /// Error unless every waypoint carries integral curvature.
    pub fn check_integral(&self) -> Result<()> {
        if self.allow_transverse {
            return Ok(());
        }
        for p in &self.points {
            if !p.connection.is_integral() {
                return Err(G2Error::NonIntegralCurvature {
                    deviation: f64::NAN,
                });
            }
        }
        Ok(())
    }

    pub(crate) fn segments(&self) -> impl Iterator<Item = Segment<'_>> {
        self.points.windows(2).map(|w| {
            let (a, b) = (&w[0], &w[1]);
            let translation = (0..DIM)
                .map(|i| b.torus.offset()[i] - a.torus.offset()[i])
                .collect();
            let holonomy = b
                .connection
                .holonomy()
                .iter()
                .zip(a.connection.holonomy())
                .map(|(x, y)| x - y)
                .collect();
            let curvature = b
                .connection
                .curvature()
                .axpy(-1.0, a.connection.curvature());
            Segment {
                start: a,
                variation: Variation {
                    translation,
                    holonomy,
                    curvature,
                },
            }
        })
    }
}

pub(crate) struct Segment<'a> {
    pub start: &'a CyclePoint,
    pub variation: Variation,
}

/// Gauss–Legendre nodes and weights on [0, 1]; exact through degree 7.
const GAUSS4: [(f64, f64); 4] = [
    (0.069_431_844_202_973_71, 0.173_927_422_568_726_9),
    (0.330_009_478_207_571_9, 0.326_072_577_431_273_1),
    (0.669_990_521_792_428_1, 0.326_072_577_431_273_1),
    (0.930_568_155_797_026_3, 0.173_927_422_568_726_9),
];

/// The form exp(−f̄/2π + π*φ + π*ψ) on the swept cylinder [0,1]×N at sweep
/// time t, together with the velocity frame used for pullbacks.
///
/// The connection on the cylinder is ā = 2π(h + t h′)·ds + (centred
/// potential of f_t), so f̄ = f_t + dt∧(2π h′·ds) plus a term linear in
/// (s − ½) that integrates to zero against the constant remainder.
pub(crate) struct SweptIntegrand {
    pub exp: ExtForm,
    pub frame: Vec<Vec<f64>>,
}

impl SweptIntegrand {
    pub fn at(start: &CyclePoint, variation: &Variation, t: f64, fs: &G2Structure<f64>) -> Self {
        let k = start.dim();
        let mut frame = vec![variation.translation.clone()];
        frame.extend(start.torus.spanning_f64());
        let f_t = start
            .connection
            .curvature()
            .axpy(t, &variation.curvature)
            .shifted();
        let mut fbar = f_t;
        for (a, &dh) in variation.holonomy.iter().enumerate() {
            if dh != 0.0 {
                fbar = fbar.axpy(2.0 * PI * dh, &ExtForm::basis(k + 1, &[0, a + 1]));
            }
        }
        let x = fbar
            .scale(-1.0 / (2.0 * PI))
            .add(&ExtForm::pullback(fs.phi(), &frame))
            .add(&ExtForm::pullback(fs.psi(), &frame));
        SweptIntegrand {
            exp: x.exp(),
            frame,
        }
    }

    /// Top coefficient of exp(…) ∧ π*α, α a constant ambient form.
    pub fn paired_with(&self, alpha: Option<&KForm<f64>>) -> f64 {
        match alpha {
            None => self.exp.top(),
            Some(a) => top_of_wedge(&self.exp, &ExtForm::pullback(a, &self.frame)),
        }
    }
}

/// Top coefficient of a ∧ b without forming the full product.
pub(crate) fn top_of_wedge(a: &ExtForm, b: &ExtForm) -> f64 {
    let full = (1usize << a.dim()) - 1;
    let mut acc = 0.0;
    for (m, &x) in a.coeffs().iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        let mc = full & !m;
        let y = b.coeff(mc as u8);
        if y != 0.0 {
            acc += crate::algebra::basis::wedge_sign(m as u8, mc as u8) as f64 * x * y;
        }
    }
    acc
}

/// ∫ over the swept cylinder of exp(…) ∧ π*α for each α in `alphas`
/// (`None` for the bare exponential), summed over segments. The cylinder is
/// oriented with the sweep direction first.
pub(crate) fn swept_integrals(
    path: &CyclePath,
    fs: &G2Structure<f64>,
    alphas: &[Option<&KForm<f64>>],
) -> Vec<f64> {
    let mut out = vec![0.0; alphas.len()];
    for seg in path.segments() {
        let varying = seg.variation.curvature.max_abs() != 0.0;
        let nodes: &[(f64, f64)] = if varying { &GAUSS4 } else { &[(0.0, 1.0)] };
        for &(t, w) in nodes {
            let integrand = SweptIntegrand::at(seg.start, &seg.variation, t, fs);
            for (o, a) in out.iter_mut().zip(alphas) {
                *o += w * integrand.paired_with(*a);
            }
        }
    }
    out
}
