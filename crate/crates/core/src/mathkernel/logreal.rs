//! Signed reals stored as `(sign, ln|x|)`.
//!
//! Products of many Gamma values overflow `f64` long before the quantities
//! they describe become uninteresting, so every closed form in this crate is
//! evaluated in this representation and converted to a float at the edge.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug)]
pub struct LogReal {
    sign: i8,
    logmag: f64,
}

impl LogReal {
    pub const ZERO: LogReal = LogReal {
        sign: 0,
        logmag: f64::NEG_INFINITY,
    };
    pub const ONE: LogReal = LogReal {
        sign: 1,
        logmag: 0.0,
    };

    /// Builds a value from its sign and natural log magnitude. A zero sign
    /// ignores `logmag`.
    pub fn new(sign: i8, logmag: f64) -> Self {
        match sign.signum() {
            0 => Self::ZERO,
            s => LogReal { sign: s, logmag },
        }
    }

    /// `exp(logmag)`, i.e. a positive number given by its logarithm.
    pub fn from_ln(logmag: f64) -> Self {
        LogReal { sign: 1, logmag }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else if x > 0.0 {
            LogReal {
                sign: 1,
                logmag: x.ln(),
            }
        } else {
            LogReal {
                sign: -1,
                logmag: (-x).ln(),
            }
        }
    }

    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.logmag.exp(),
        }
    }

    pub fn sign(self) -> i8 {
        self.sign
    }

    /// Natural log of the magnitude; `-inf` for zero.
    pub fn ln_abs(self) -> f64 {
        if self.sign == 0 {
            f64::NEG_INFINITY
        } else {
            self.logmag
        }
    }

    pub fn log10_abs(self) -> f64 {
        self.ln_abs() / std::f64::consts::LN_10
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn is_positive(self) -> bool {
        self.sign > 0
    }

    pub fn is_finite(self) -> bool {
        self.sign == 0 || self.logmag.is_finite()
    }

    pub fn abs(self) -> Self {
        LogReal {
            sign: self.sign.abs(),
            logmag: self.logmag,
        }
    }

    pub fn recip(self) -> Self {
        LogReal {
            sign: self.sign,
            logmag: -self.logmag,
        }
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        let sign = if self.sign < 0 && n % 2 != 0 { -1 } else { self.sign.abs() };
        LogReal::new(sign, self.logmag * f64::from(n))
    }

    /// Real power of a nonnegative value.
    pub fn powf(self, p: f64) -> Self {
        debug_assert!(self.sign >= 0, "powf of a negative LogReal");
        if p == 0.0 {
            Self::ONE
        } else {
            LogReal::new(self.sign, self.logmag * p)
        }
    }

    pub fn sqrt(self) -> Self {
        self.powf(0.5)
    }

    /// `|self - other| / max(|self|, |other|)`, evaluated without leaving log
    /// space when the two magnitudes are far apart.
    pub fn rel_diff(self, other: LogReal) -> f64 {
        if self.sign == 0 && other.sign == 0 {
            return 0.0;
        }
        if self.sign != other.sign {
            return if self.sign == 0 || other.sign == 0 { 1.0 } else { 2.0 };
        }
        let (hi, lo) = if self.logmag >= other.logmag {
            (self.logmag, other.logmag)
        } else {
            (other.logmag, self.logmag)
        };
        -(lo - hi).exp_m1()
    }

    pub fn approx_eq(self, other: LogReal, rel_tol: f64) -> bool {
        self.rel_diff(other) <= rel_tol
    }
}

impl PartialEq for LogReal {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for LogReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => match self.sign {
                0 => Some(Ordering::Equal),
                1 => self.logmag.partial_cmp(&other.logmag),
                _ => other.logmag.partial_cmp(&self.logmag),
            },
            ord => Some(ord),
        }
    }
}

impl Mul for LogReal {
    type Output = LogReal;
    fn mul(self, rhs: LogReal) -> LogReal {
        LogReal::new(self.sign * rhs.sign, self.logmag + rhs.logmag)
    }
}

impl Mul<f64> for LogReal {
    type Output = LogReal;
    fn mul(self, rhs: f64) -> LogReal {
        self * LogReal::from_f64(rhs)
    }
}

impl Div for LogReal {
    type Output = LogReal;
    /// Division by zero yields an infinite magnitude with the numerator's sign.
    fn div(self, rhs: LogReal) -> LogReal {
        if rhs.sign == 0 {
            return LogReal::new(self.sign, f64::INFINITY);
        }
        LogReal::new(self.sign * rhs.sign, self.logmag - rhs.logmag)
    }
}

impl Div<f64> for LogReal {
    type Output = LogReal;
    fn div(self, rhs: f64) -> LogReal {
        self / LogReal::from_f64(rhs)
    }
}

impl Neg for LogReal {
    type Output = LogReal;
    fn neg(self) -> LogReal {
        LogReal {
            sign: -self.sign,
            logmag: self.logmag,
        }
    }
}

impl Add for LogReal {
    type Output = LogReal;
    fn add(self, rhs: LogReal) -> LogReal {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        let (big, small) = if self.logmag >= rhs.logmag {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let ratio = (small.logmag - big.logmag).exp();
        if big.sign == small.sign {
            LogReal::new(big.sign, big.logmag + ratio.ln_1p())
        } else if ratio == 1.0 {
            LogReal::ZERO
        } else {
            LogReal::new(big.sign, big.logmag + (-ratio).ln_1p())
        }
    }
}

impl Sub for LogReal {
    type Output = LogReal;
    fn sub(self, rhs: LogReal) -> LogReal {
        self + (-rhs)
    }
}

impl Product for LogReal {
    fn product<I: Iterator<Item = LogReal>>(iter: I) -> LogReal {
        iter.fold(LogReal::ONE, |acc, x| acc * x)
    }
}

impl Sum for LogReal {
    fn sum<I: Iterator<Item = LogReal>>(iter: I) -> LogReal {
        iter.fold(LogReal::ZERO, |acc, x| acc + x)
    }
}

impl From<f64> for LogReal {
    fn from(x: f64) -> Self {
        LogReal::from_f64(x)
    }
}

impl fmt::Display for LogReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            _ if self.to_f64().is_normal() => write!(f, "{:.15e}", self.to_f64()),
            s => {
                let log10 = self.logmag / std::f64::consts::LN_10;
                let exp = log10.floor();
                let mant = 10f64.powf(log10 - exp);
                let sgn = if s < 0 { "-" } else { "" };
                write!(f, "{sgn}{mant:.15}e{exp}")
            }
        }
    }
}

impl Serialize for LogReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("LogReal", 3)?;
        st.serialize_field("sign", &self.sign)?;
        st.serialize_field("ln_abs", &(if self.sign == 0 { None } else { Some(self.logmag) }))?;
        st.serialize_field("value", &self.to_f64())?;
        st.end()
    }
}
