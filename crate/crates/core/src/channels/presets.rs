use std::fmt;
use std::str::FromStr;

use crate::channels::KrausChannel;
use crate::linalg::{self, real, CMatrix, ZERO};
use crate::qcore::DensityOperator;
use crate::{Error, Result};

/// Named standard channels. Parsed from strings such as `identity`,
/// `discard`, `reset`, `depolarizing:0.25`, `dephasing:0.5` or
/// `amplitude_damping:0.3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChannelPreset {
    Identity,
    /// Trace out the input; one-dimensional output.
    Discard,
    /// Trace out the input and prepare `|0>` of the same dimension.
    Reset,
    /// `rho -> (1 - p) rho + p I/d`.
    Depolarizing(f64),
    /// `rho -> (1 - p) rho + p/(d-1) sum_{k>0} Z^k rho Z^-k` with the clock
    /// operator `Z`; for a qubit this is `(1 - p) rho + p Z rho Z`.
    Dephasing(f64),
    /// Qubit amplitude damping with decay probability `gamma`.
    AmplitudeDamping(f64),
}

impl ChannelPreset {
    pub fn to_kraus(self, dim_in: usize) -> Result<KrausChannel> {
        match self {
            ChannelPreset::Identity => KrausChannel::new(vec![CMatrix::identity(dim_in, dim_in)]),
            ChannelPreset::Discard => {
                let one = DensityOperator::maximally_mixed(crate::qcore::SystemLayout::single("out", 1)?);
                trace_and_replace(dim_in, &one)
            }
            ChannelPreset::Reset => {
                let mut m = CMatrix::from_element(dim_in, dim_in, ZERO);
                m[(0, 0)] = real(1.0);
                let sigma = DensityOperator::new(crate::qcore::SystemLayout::single("out", dim_in)?, m)?;
                trace_and_replace(dim_in, &sigma)
            }
            ChannelPreset::Depolarizing(p) => depolarizing(dim_in, check_prob(p)?),
            ChannelPreset::Dephasing(p) => dephasing(dim_in, check_prob(p)?),
            ChannelPreset::AmplitudeDamping(g) => {
                let g = check_prob(g)?;
                if dim_in != 2 {
                    return Err(Error::InvalidParameter(format!(
                        "amplitude damping is defined on qubits, got dimension {dim_in}"
                    )));
                }
                let k0 = CMatrix::from_row_slice(2, 2, &[real(1.0), ZERO, ZERO, real((1.0 - g).sqrt())]);
                let k1 = CMatrix::from_row_slice(2, 2, &[ZERO, real(g.sqrt()), ZERO, ZERO]);
                KrausChannel::new(vec![k0, k1])
            }
        }
    }
}

fn check_prob(p: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&p) {
        Ok(p)
    } else {
        Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")))
    }
}

/// Output the fixed state `sigma` regardless of input:
/// `K_{ij} = sqrt(s_i) |u_i><j|` over the eigenpairs of `sigma`.
pub fn trace_and_replace(dim_in: usize, sigma: &DensityOperator) -> Result<KrausChannel> {
    let (vals, vecs) = linalg::hermitian_eigh(sigma.matrix());
    let dout = vals.len();
    let mut kraus = Vec::new();
    for (i, &s) in vals.iter().enumerate() {
        if s <= crate::tol::RANK {
            continue;
        }
        for j in 0..dim_in {
            let mut k = CMatrix::from_element(dout, dim_in, ZERO);
            for r in 0..dout {
                k[(r, j)] = vecs[(r, i)] * real(s.sqrt());
            }
            kraus.push(k);
        }
    }
    KrausChannel::new(kraus)
}

/// Shift `X|k> = |k+1>` and clock `Z|k> = w^k |k>` on dimension `d`.
fn shift_and_clock(d: usize) -> (CMatrix, CMatrix) {
    let mut x = CMatrix::from_element(d, d, ZERO);
    let mut z = CMatrix::from_element(d, d, ZERO);
    for k in 0..d {
        x[((k + 1) % d, k)] = real(1.0);
        z[(k, k)] = num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / d as f64);
    }
    (x, z)
}

fn matrix_power(m: &CMatrix, k: usize) -> CMatrix {
    (0..k).fold(CMatrix::identity(m.nrows(), m.ncols()), |acc, _| acc * m)
}

/// Weyl-operator form: weight `1 - p + p/d^2` on the identity and `p/d^2` on
/// each of the other `d^2 - 1` operators `X^a Z^b`.
fn depolarizing(d: usize, p: f64) -> Result<KrausChannel> {
    let (x, z) = shift_and_clock(d);
    let d2 = (d * d) as f64;
    let mut kraus = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            let w = if a == 0 && b == 0 { 1.0 - p + p / d2 } else { p / d2 };
            kraus.push(matrix_power(&x, a) * matrix_power(&z, b) * real(w.sqrt()));
        }
    }
    KrausChannel::new(kraus)
}

fn dephasing(d: usize, p: f64) -> Result<KrausChannel> {
    let (_, z) = shift_and_clock(d);
    let mut kraus = vec![CMatrix::identity(d, d) * real((1.0 - p).sqrt())];
    if d > 1 {
        let w = (p / (d - 1) as f64).sqrt();
        for k in 1..d {
            kraus.push(matrix_power(&z, k) * real(w));
        }
    }
    KrausChannel::new(kraus)
}

impl FromStr for ChannelPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix("preset:").unwrap_or(s);
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let num = |what: &str| -> Result<f64> {
            let a =
                arg.ok_or_else(|| Error::InvalidParameter(format!("`{what}` needs a parameter, e.g. `{what}:0.25`")))?;
            a.trim().parse::<f64>().map_err(|_| Error::InvalidParameter(format!("bad number `{a}` for `{what}`")))
        };
        let no_arg = |p: ChannelPreset| -> Result<ChannelPreset> {
            match arg {
                None => Ok(p),
                Some(_) => Err(Error::InvalidParameter(format!("`{name}` takes no parameter"))),
            }
        };
        match name {
            "identity" | "id" => no_arg(ChannelPreset::Identity),
            "discard" => no_arg(ChannelPreset::Discard),
            "reset" => no_arg(ChannelPreset::Reset),
            "depolarizing" => Ok(ChannelPreset::Depolarizing(check_prob(num(name)?)?)),
            "dephasing" => Ok(ChannelPreset::Dephasing(check_prob(num(name)?)?)),
            "amplitude_damping" | "amplitude-damping" => Ok(ChannelPreset::AmplitudeDamping(check_prob(num(name)?)?)),
            other => Err(Error::InvalidParameter(format!("unknown channel preset `{other}`"))),
        }
    }
}

impl fmt::Display for ChannelPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelPreset::Identity => write!(f, "identity"),
            ChannelPreset::Discard => write!(f, "discard"),
            ChannelPreset::Reset => write!(f, "reset"),
            ChannelPreset::Depolarizing(p) => write!(f, "depolarizing:{p}"),
            ChannelPreset::Dephasing(p) => write!(f, "dephasing:{p}"),
            ChannelPreset::AmplitudeDamping(g) => write!(f, "amplitude_damping:{g}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["identity", "discard", "reset", "depolarizing:0.25", "dephasing:0.5", "amplitude_damping:0.3"] {
            let p: ChannelPreset = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert_eq!("preset:identity".parse::<ChannelPreset>().unwrap(), ChannelPreset::Identity);
        assert!("depolarizing".parse::<ChannelPreset>().is_err());
        assert!("depolarizing:1.5".parse::<ChannelPreset>().is_err());
        assert!("identity:3".parse::<ChannelPreset>().is_err());
        assert!("teleport".parse::<ChannelPreset>().is_err());
    }

    #[test]
    fn fully_depolarizing_qubit_is_half_paulis() {
        let ch = ChannelPreset::Depolarizing(1.0).to_kraus(2).unwrap();
        assert_eq!(ch.kraus().len(), 4);
        for k in ch.kraus() {
            // each is (1/2) times a unitary
            let g = k.adjoint() * k;
            assert!(max_abs(&(g - CMatrix::identity(2, 2) * real(0.25))) < 1e-14);
        }
        let rho = CMatrix::from_row_slice(2, 2, &[real(0.9), real(0.1), real(0.1), real(0.1)]);
        let out = ch.apply_matrix(&rho).unwrap();
        assert!(max_abs(&(out - CMatrix::identity(2, 2) * real(0.5))) < 1e-14);
    }

    #[test]
    fn dephasing_kills_coherences() {
        let ch = ChannelPreset::Dephasing(0.5).to_kraus(2).unwrap();
        assert_eq!(ch.kraus().len(), 2);
        let rho = CMatrix::from_row_slice(2, 2, &[real(0.5), real(0.5), real(0.5), real(0.5)]);
        let out = ch.apply_matrix(&rho).unwrap();
        assert!(out[(0, 1)].norm() < 1e-15);
        let ch3 = ChannelPreset::Dephasing(2.0 / 3.0).to_kraus(3).unwrap();
        let rho3 = CMatrix::from_element(3, 3, real(1.0 / 3.0));
        let out3 = ch3.apply_matrix(&rho3).unwrap();
        assert!(max_abs(&(out3 - CMatrix::identity(3, 3) * real(1.0 / 3.0))) < 1e-14);
    }

    #[test]
    fn discard_and_reset() {
        let d = ChannelPreset::Discard.to_kraus(3).unwrap();
        assert_eq!(d.dim_out(), 1);
        let r = ChannelPreset::Reset.to_kraus(2).unwrap();
        let rho = CMatrix::from_row_slice(2, 2, &[real(0.2), ZERO, ZERO, real(0.8)]);
        let out = r.apply_matrix(&rho).unwrap();
        assert!((out[(0, 0)].re - 1.0).abs() < 1e-14);
        assert!(ChannelPreset::AmplitudeDamping(0.2).to_kraus(3).is_err());
    }
}
