//! Triangle relations shared by all nine planar spaces.
//!
//! Each law is evaluated as a residual `lhs - rhs`. The tangent forms are
//! compared after multiplying out their `T = S / C` denominators, which keeps
//! the residual bounded where a tangent has a pole. Laws that are printed
//! with a suspected slip carry two variants: the expression as printed and
//! the one that follows the pattern of its siblings.

use std::collections::BTreeMap;

use serde::Serialize;

use super::triangle::{measure_triangle, ray, right_triangle, TriangleMeasurements};
use super::{angle, distance};
use crate::entity::Space;
use crate::error::{Error, Result};
use crate::gtrig::{gcos, gsin, gtan};
use crate::kernel::Characteristic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LawVariant {
    #[serde(rename = "as-printed")]
    AsPrinted,
    #[serde(rename = "corrected")]
    Corrected,
}

impl LawVariant {
    pub fn name(self) -> &'static str {
        match self {
            LawVariant::AsPrinted => "as-printed",
            LawVariant::Corrected => "corrected",
        }
    }
}

/// Generalized sines and cosines of the six triangle elements.
struct Elements {
    k1: f64,
    k2: f64,
    ca: f64,
    cb: f64,
    cc: f64,
    sa: f64,
    sb: f64,
    sc: f64,
    // level-2 functions of alpha, beta', gamma
    cal: f64,
    cbe: f64,
    cga: f64,
    sal: f64,
    sbe: f64,
    sga: f64,
    // level-1 sines of the angles, used by the printed tangent forms
    s1al: f64,
    s1be: f64,
    s1ga: f64,
}

impl Elements {
    fn new(k1: Characteristic, k2: Characteristic, t: &TriangleValues) -> Self {
        let (c1, s1) = (|x| gcos(k1, x), |x| gsin(k1, x));
        let (c2, s2) = (|x| gcos(k2, x), |x| gsin(k2, x));
        Self {
            k1: k1.as_f64(),
            k2: k2.as_f64(),
            ca: c1(t.a),
            cb: c1(t.b),
            cc: c1(t.c),
            sa: s1(t.a),
            sb: s1(t.b),
            sc: s1(t.c),
            cal: c2(t.alpha),
            cbe: c2(t.beta_prime),
            cga: c2(t.gamma),
            sal: s2(t.alpha),
            sbe: s2(t.beta_prime),
            sga: s2(t.gamma),
            s1al: s1(t.alpha),
            s1be: s1(t.beta_prime),
            s1ga: s1(t.gamma),
        }
    }
}

/// `T^2(x) = [T^2(y) + T^2(z) + 2 sign T(y) T(z) C(w) + k k' T^2(y) T^2(z) q^2]
///           / (1 - sign k T(y) T(z) C(w))^2`,
/// multiplied through by `C^2(x) C^2(y) C^2(z) (den)^2`.
#[allow(clippy::too_many_arguments)]
fn tangent_residual(
    k: f64,
    kk: f64,
    sign: f64,
    (sx, cx): (f64, f64),
    (sy, cy): (f64, f64),
    (sz, cz): (f64, f64),
    cw: f64,
    q: f64,
) -> f64 {
    let den = cy * cz - sign * k * sy * sz * cw;
    let num = sy * sy * cz * cz + sz * sz * cy * cy + 2.0 * sign * sy * cy * sz * cz * cw
        + kk * sy * sy * sz * sz * q * q;
    sx * sx * den * den - cx * cx * num
}

type LawFn = fn(&Elements, LawVariant) -> f64;

/// One entry of the law registry.
pub struct Law {
    pub id: &'static str,
    /// Variants that differ from each other; a single entry means the law
    /// has no alternative reading.
    pub variants: &'static [LawVariant],
    /// Variant used by [`law_residuals`] for the reported residual.
    pub preferred: LawVariant,
    eval: LawFn,
}

impl Law {
    pub fn has_alternative(&self) -> bool {
        self.variants.len() > 1
    }
}

const ONE: &[LawVariant] = &[LawVariant::AsPrinted];
const TWO: &[LawVariant] = &[LawVariant::AsPrinted, LawVariant::Corrected];

/// The sine law, cosine laws I and II, and their tangent forms.
pub static LAWS: [Law; 13] = [
    Law {
        id: "eq13",
        variants: ONE,
        preferred: LawVariant::AsPrinted,
        eval: |e, _| {
            let r1 = e.sa * e.sbe - e.sb * e.sal;
            let r2 = e.sb * e.sga - e.sc * e.sbe;
            let r3 = e.sa * e.sga - e.sc * e.sal;
            r1.abs().max(r2.abs()).max(r3.abs())
        },
    },
    Law {
        id: "eq14",
        variants: ONE,
        preferred: LawVariant::AsPrinted,
        eval: |e, _| e.ca - (e.cb * e.cc + e.k1 * e.sb * e.sc * e.cal),
    },
    Law {
        id: "eq15",
        variants: ONE,
        preferred: LawVariant::AsPrinted,
        eval: |e, _| e.cb - (e.ca * e.cc - e.k1 * e.sa * e.sc * e.cbe),
    },
    Law {
        id: "eq16",
        variants: ONE,
        preferred: LawVariant::AsPrinted,
        eval: |e, _| e.cc - (e.ca * e.cb + e.k1 * e.sa * e.sb * e.cga),
    },
    Law {
        id: "eq17",
        variants: ONE,
        preferred: LawVariant::AsPrinted,
        eval: |e, _| e.cal - (e.cbe * e.cga + e.k2 * e.sbe * e.sga * e.ca),
    },
    Law {
        id: "eq18",
        variants: ONE,
        preferred: LawVariant::AsPrinted,
        eval: |e, _| e.cbe - (e.cal * e.cga - e.k2 * e.sal * e.sga * e.cb),
    },
    Law {
        id: "eq19",
        variants: TWO,
        preferred: LawVariant::Corrected,
        eval: |e, v| {
            let side = match v {
                LawVariant::AsPrinted => e.ca,
                LawVariant::Corrected => e.cc,
            };
            e.cga - (e.cal * e.cbe + e.k2 * e.sal * e.sbe * side)
        },
    },
    Law {
        id: "eq20",
        variants: TWO,
        preferred: LawVariant::Corrected,
        eval: |e, v| {
            let q = if v == LawVariant::AsPrinted { e.s1al } else { e.sal };
            tangent_residual(e.k1, e.k1 * e.k2, -1.0, (e.sa, e.ca), (e.sb, e.cb), (e.sc, e.cc), e.cal, q)
        },
    },
    Law {
        id: "eq21",
        variants: TWO,
        preferred: LawVariant::Corrected,
        eval: |e, v| {
            let q = if v == LawVariant::AsPrinted { e.s1be } else { e.sbe };
            tangent_residual(e.k1, e.k1 * e.k2, 1.0, (e.sb, e.cb), (e.sa, e.ca), (e.sc, e.cc), e.cbe, q)
        },
    },
    Law {
        id: "eq22",
        variants: TWO,
        preferred: LawVariant::Corrected,
        eval: |e, v| {
            let q = if v == LawVariant::AsPrinted { e.s1ga } else { e.sga };
            tangent_residual(e.k1, e.k1 * e.k2, -1.0, (e.sc, e.cc), (e.sa, e.ca), (e.sb, e.cb), e.cga, q)
        },
    },
    Law {
        id: "eq23",
        variants: ONE,
        preferred: LawVariant::AsPrinted,
        eval: |e, _| {
            tangent_residual(e.k2, e.k1 * e.k2, -1.0, (e.sal, e.cal), (e.sbe, e.cbe), (e.sga, e.cga), e.ca, e.sa)
        },
    },
    Law {
        id: "eq24",
        variants: ONE,
        preferred: LawVariant::AsPrinted,
        eval: |e, _| {
            tangent_residual(e.k2, e.k1 * e.k2, 1.0, (e.sbe, e.cbe), (e.sal, e.cal), (e.sga, e.cga), e.cb, e.sb)
        },
    },
    Law {
        id: "eq25",
        variants: ONE,
        preferred: LawVariant::AsPrinted,
        eval: |e, _| {
            tangent_residual(e.k2, e.k1 * e.k2, -1.0, (e.sga, e.cga), (e.sal, e.cal), (e.sbe, e.cbe), e.cc, e.sc)
        },
    },
];

/// Plain values of the six triangle elements.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TriangleValues {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta_prime: f64,
    pub gamma: f64,
}

impl From<&TriangleMeasurements> for TriangleValues {
    fn from(m: &TriangleMeasurements) -> Self {
        Self {
            a: m.a.value,
            b: m.b.value,
            c: m.c.value,
            alpha: m.alpha.value,
            beta_prime: m.beta_prime.value,
            gamma: m.gamma.value,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub signature: String,
    pub triangle: TriangleValues,
    /// Absolute residual of each law in its preferred variant.
    pub residuals: BTreeMap<String, f64>,
    /// Variant behind each entry of `residuals`, for laws that have two.
    pub variants: BTreeMap<String, LawVariant>,
    /// Absolute residual of the non-preferred variant.
    pub alternates: BTreeMap<String, f64>,
    /// Set when some element is imaginary and the laws were not evaluated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl LawReport {
    /// Residual of `law` under `variant`, whichever map holds it.
    pub fn residual(&self, law: &str, variant: LawVariant) -> Option<f64> {
        match self.variants.get(law) {
            Some(&v) if v == variant => self.residuals.get(law).copied(),
            Some(_) => self.alternates.get(law).copied(),
            None => self.residuals.get(law).copied(),
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.values().fold(0.0, |a, &r| a.max(r))
    }
}

pub fn law_residuals(sp: &Space, m: &TriangleMeasurements) -> LawReport {
    let mut report = LawReport {
        signature: sp.signature().to_string(),
        triangle: TriangleValues::from(m),
        residuals: BTreeMap::new(),
        variants: BTreeMap::new(),
        alternates: BTreeMap::new(),
        skipped: None,
    };
    if !m.all_real() {
        report.skipped = Some("imaginary measure in triangle".into());
        return report;
    }
    let e = Elements::new(sp.k(1), sp.k(2), &report.triangle);
    for law in &LAWS {
        report.residuals.insert(law.id.into(), (law.eval)(&e, law.preferred).abs());
        if law.has_alternative() {
            report.variants.insert(law.id.into(), law.preferred);
            for &v in law.variants.iter().filter(|&&v| v != law.preferred) {
                report.alternates.insert(law.id.into(), (law.eval)(&e, v).abs());
            }
        }
    }
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct RightTriangleReport {
    pub signature: String,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
    pub residuals: BTreeMap<String, f64>,
}

impl RightTriangleReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.values().fold(0.0, |a, &r| a.max(r))
    }
}

/// Build the right triangle with legs `a`, `b`, measure it, and evaluate the
/// ten right-triangle identities. Needs `k_2 = 1`.
pub fn right_triangle_residuals(sp: &Space, a: f64, b: f64, tol: f64) -> Result<RightTriangleReport> {
    let t = right_triangle(sp, a, b, tol)?;
    let [pa, pb, pc] = t.vertices();
    let c = distance(sp, pa, pb, tol)?;
    let alpha = angle(sp, &ray(sp, pa, pb, tol)?, &ray(sp, pa, pc, tol)?, tol)?;
    let beta = angle(sp, &ray(sp, pb, pa, tol)?, &ray(sp, pb, pc, tol)?, tol)?;
    if !(c.is_real() && alpha.is_real() && beta.is_real()) {
        return Err(Error::CrossType("right triangle has an imaginary element".into()));
    }
    let (c, alpha, beta) = (c.value, alpha.value, beta.value);
    let k1 = sp.k(1);
    let (c1, s1) = (|x| gcos(k1, x), |x| gsin(k1, x));
    let t1 = |x| gtan(k1, x);
    let (ta, tb, tc) = (t1(a)?, t1(b)?, t1(c)?);
    let kv = k1.as_f64();
    let entries = [
        ("eq26", tc * tc - (ta * ta + tb * tb + kv * ta * ta * tb * tb)),
        ("eq27", tb - tc * alpha.cos()),
        ("eq28", ta - tc * beta.cos()),
        ("eq29", s1(a) - s1(c) * alpha.sin()),
        ("eq30", s1(b) - s1(c) * beta.sin()),
        ("eq31", ta - s1(b) * alpha.tan()),
        ("eq32", tb - s1(a) * beta.tan()),
        ("eq33", alpha.cos() - c1(a) * beta.sin()),
        ("eq34", beta.cos() - c1(b) * alpha.sin()),
        ("eq35", c1(c) - 1.0 / (alpha.tan() * beta.tan())),
    ];
    Ok(RightTriangleReport {
        signature: sp.signature().to_string(),
        a,
        b,
        c,
        alpha,
        beta,
        residuals: entries.iter().map(|(k, v)| (k.to_string(), v.abs())).collect(),
    })
}

/// Convenience: measure a triangle and evaluate the registry on it.
pub fn triangle_law_report(sp: &Space, t: &super::Triangle, tol: f64) -> Result<LawReport> {
    Ok(law_residuals(sp, &measure_triangle(sp, t, tol)?))
}
