use crate::error::{Error, Result};
use crate::fuchsian::SymmetricHeunConfig;
use crate::poly;
use crate::C64;

/// Which closed form is used for the nine-term recurrence coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecurrenceFamily {
    /// Any configuration with no point at the origin.
    General,
    /// Canonical biquadratic configuration `sigma_1 = sigma_3 = 0`, `sigma_4 = 1`.
    Circular,
    /// Canonical with `sigma_2 = 0` and all `rho_k = 0`.
    Simplest,
}

impl RecurrenceFamily {
    pub fn name(self) -> &'static str {
        match self {
            RecurrenceFamily::General => "general",
            RecurrenceFamily::Circular => "circular",
            RecurrenceFamily::Simplest => "simplest",
        }
    }
}

impl std::str::FromStr for RecurrenceFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(RecurrenceFamily::General),
            "circular" => Ok(RecurrenceFamily::Circular),
            "simplest" => Ok(RecurrenceFamily::Simplest),
            other => Err(Error::InvalidConfig(format!(
                "unknown recurrence family '{other}'"
            ))),
        }
    }
}

const CANONICAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
enum Kind {
    /// Coefficients of `P^2`, `P P'/2` and `lambda P + sum_j q_j P/(z - z_j)`.
    General {
        a: Vec<C64>,
        b: Vec<C64>,
        c: Vec<C64>,
        norm: C64,
    },
    Circular {
        lambda: C64,
        cos2: C64,
        s2: C64,
        rho: [C64; 4],
    },
    Simplest {
        lambda: C64,
    },
}

/// Prepared multipliers `r_{n-1} .. r_{n-8}` of
/// `f_n + sum_{k=1}^{8} r_{n-k} f_{n-k} = 0`.
#[derive(Debug, Clone)]
pub struct Recurrence {
    family: RecurrenceFamily,
    kind: Kind,
}

impl Recurrence {
    pub fn new(family: RecurrenceFamily, config: &SymmetricHeunConfig) -> Result<Self> {
        let kind = match family {
            RecurrenceFamily::General => {
                if let Some(j) = config.points().iter().position(|z| z.norm() == 0.0) {
                    return Err(Error::SingularAtOrigin(j));
                }
                let p = config.p_poly();
                let dp = poly::derivative(&p);
                let a = poly::mul(&p, &p);
                let b = poly::scale(&poly::mul(&p, &dp), C64::new(0.5, 0.0));
                let mut c = poly::scale(&p, config.lambda());
                let pts = config.points();
                for j in 0..4 {
                    let others: Vec<C64> = (0..4).filter(|&k| k != j).map(|k| pts[k]).collect();
                    c = poly::add(&c, &poly::scale(&poly::from_roots(&others), config.q()[j]));
                }
                Kind::General {
                    norm: a[0],
                    a,
                    b,
                    c,
                }
            }
            RecurrenceFamily::Circular | RecurrenceFamily::Simplest => {
                let (phi, rho) = match (config.phi(), config.rho()) {
                    (Some(phi), Some(rho)) => (phi, rho),
                    _ => {
                        return Err(Error::BadFamilyForConfig {
                            family: family.name(),
                            reason: "points are not in canonical biquadratic position".into(),
                        })
                    }
                };
                let cos2 = (phi * 2.0).cos();
                if family == RecurrenceFamily::Simplest {
                    if cos2.norm() > CANONICAL_TOL {
                        return Err(Error::BadFamilyForConfig {
                            family: family.name(),
                            reason: format!(
                                "sigma_2 = {} is not zero",
                                crate::fmt_complex(-cos2 * 2.0)
                            ),
                        });
                    }
                    if let Some(k) = rho.iter().position(|r| r.norm() > CANONICAL_TOL) {
                        return Err(Error::BadFamilyForConfig {
                            family: family.name(),
                            reason: format!(
                                "rho_{} = {} is not zero",
                                k + 2,
                                crate::fmt_complex(rho[k])
                            ),
                        });
                    }
                    Kind::Simplest {
                        lambda: config.lambda(),
                    }
                } else {
                    Kind::Circular {
                        lambda: config.lambda(),
                        cos2,
                        s2: (phi * 2.0).sin(),
                        rho,
                    }
                }
            }
        };
        Ok(Recurrence { family, kind })
    }

    pub fn family(&self) -> RecurrenceFamily {
        self.family
    }

    /// `[r_{n-1}, ..., r_{n-8}]` for `n >= 2`.
    pub fn coeffs(&self, n: usize) -> [C64; 8] {
        let nf = n as f64;
        let nn = nf * (nf - 1.0);
        let zero = C64::new(0.0, 0.0);
        let mut r = [zero; 8];
        match &self.kind {
            Kind::General { a, b, c, norm } => {
                let den = *norm * nn;
                for k in 1..=8usize {
                    let m = nf - k as f64;
                    let mut v = poly::coeff(a, k) * (m * (m - 1.0));
                    v += poly::coeff(b, k - 1) * m;
                    if k >= 2 {
                        v += poly::coeff(c, k - 2);
                    }
                    r[k - 1] = v / den;
                }
            }
            Kind::Circular {
                lambda,
                cos2,
                s2,
                rho,
            } => {
                let i4s = C64::i() * 0.25 * *s2;
                let t2 = 1.0 - 5.0 / nf + 1.5 / (nf - 1.0);
                let t4 = 1.0 - 16.0 / nf + 9.0 / (nf - 1.0);
                let t6 = 1.0 - 33.0 / nf + 22.5 / (nf - 1.0);
                r[1] = (*lambda - i4s * rho[0]) / nn - 4.0 * t2 * *cos2;
                r[2] = -i4s * rho[1] / nn;
                r[3] = (-2.0 * *lambda * *cos2 + i4s * rho[2]) / nn
                    + 2.0 * t4 * (2.0 * *cos2 * *cos2 + 1.0);
                r[4] = i4s * rho[3] / nn;
                r[5] = *lambda / nn - 4.0 * t6 * *cos2;
                r[7] = C64::new(1.0 - 56.0 / nf + 42.0 / (nf - 1.0), 0.0);
            }
            Kind::Simplest { lambda } => {
                r[1] = *lambda / nn;
                r[3] = C64::new(2.0 * (1.0 - 16.0 / nf + 9.0 / (nf - 1.0)), 0.0);
                r[5] = *lambda / nn;
                r[7] = C64::new(1.0 - 56.0 / nf + 42.0 / (nf - 1.0), 0.0);
            }
        }
        r
    }
}

/// `[r_{n-1}, ..., r_{n-8}]` for one `n >= 2`.
pub fn recurrence_coeffs(
    family: RecurrenceFamily,
    config: &SymmetricHeunConfig,
    n: usize,
) -> Result<[C64; 8]> {
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "recurrence index n = {n} must be at least 2"
        )));
    }
    Ok(Recurrence::new(family, config)?.coeffs(n))
}
