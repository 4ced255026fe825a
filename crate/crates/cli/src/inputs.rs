//! State and channel arguments: presets, inline JSON or file paths.

use std::path::Path;

use qhelper_core::channels::ChannelSpec;
use qhelper_core::linalg::{c, CMatrix};
use qhelper_core::qcore::{random::random_density, AnyState, DensityOperator, PureState, QuantumState, SystemLayout};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{CliError, CliResult};

/// One line per state preset, for `presets` and `--help`.
pub const STATE_PRESETS: &[(&str, &str)] = &[
    ("bell", "maximally entangled qubit pair on A, B"),
    ("isotropic:p", "p * Phi + (1 - p) * I/4 on two qubits A, B, with Phi the Bell projector and p in [0, 1]"),
    ("product:h1,h2", "diagonal product qubit state whose marginals have binary entropies h1, h2 in [0, 1]"),
    ("random:dA,dB,seed", "seeded Ginibre-random full-rank state on A (dim dA) and B (dim dB)"),
];

fn parse_num<T: std::str::FromStr>(s: &str, what: &str) -> CliResult<T> {
    s.trim().parse().map_err(|_| CliError::input(format!("cannot parse {what} from `{s}`")))
}

fn args<'a>(body: &'a str, n: usize, preset: &str) -> CliResult<Vec<&'a str>> {
    let parts: Vec<&str> = body.split(',').collect();
    if parts.len() != n {
        return Err(CliError::input(format!("`{preset}` expects {n} comma-separated values")));
    }
    Ok(parts)
}

/// `p * Phi + (1 - p) * I/4` on qubits `A`, `B`.
pub fn isotropic(p: f64) -> CliResult<DensityOperator> {
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::input(format!("isotropic weight {p} is outside [0, 1]")));
    }
    let phi = PureState::maximally_entangled("A", "B", 2)?.to_density();
    let m = phi.matrix() * c(p, 0.0) + CMatrix::identity(4, 4) * c((1.0 - p) / 4.0, 0.0);
    Ok(DensityOperator::new(phi.layout().clone(), m)?)
}

fn binary_entropy(p: f64) -> f64 {
    [p, 1.0 - p].iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

/// The `p >= 1/2` with binary entropy `h`.
fn invert_binary_entropy(h: f64) -> CliResult<f64> {
    if !(0.0..=1.0).contains(&h) {
        return Err(CliError::input(format!("binary entropy {h} is outside [0, 1]")));
    }
    let (mut lo, mut hi) = (0.5_f64, 1.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if binary_entropy(mid) > h {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn product(h1: f64, h2: f64) -> CliResult<DensityOperator> {
    let (p, q) = (invert_binary_entropy(h1)?, invert_binary_entropy(h2)?);
    let probs = [p * q, p * (1.0 - q), (1.0 - p) * q, (1.0 - p) * (1.0 - q)];
    Ok(DensityOperator::diagonal(SystemLayout::new(["A", "B"], &[2, 2])?, &probs)?)
}

pub fn random(da: usize, db: usize, seed: u64) -> CliResult<DensityOperator> {
    if da == 0 || db == 0 {
        return Err(CliError::input("random state dimensions must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(random_density(SystemLayout::new(["A", "B"], &[da, db])?, &mut rng))
}

fn read_if_file(text: &str) -> CliResult<Option<String>> {
    let path = Path::new(text);
    if path.is_file() {
        return std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| CliError::input(format!("cannot read `{text}`: {e}")));
    }
    Ok(None)
}

/// Resolves a `--state` argument.
pub fn load_state(text: &str) -> CliResult<AnyState> {
    let t = text.trim();
    if t.starts_with('{') {
        return Ok(AnyState::from_json_str(t)?);
    }
    if let Some(body) = read_if_file(t)? {
        return Ok(AnyState::from_json_str(&body)?);
    }
    let (name, body) = t.split_once(':').unwrap_or((t, ""));
    let rho = match name {
        "bell" if body.is_empty() => return Ok(AnyState::Pure(PureState::maximally_entangled("A", "B", 2)?)),
        "isotropic" => isotropic(parse_num(body, "isotropic weight")?)?,
        "product" => {
            let a = args(body, 2, "product")?;
            product(parse_num(a[0], "entropy")?, parse_num(a[1], "entropy")?)?
        }
        "random" => {
            let a = args(body, 3, "random")?;
            random(parse_num(a[0], "dimension")?, parse_num(a[1], "dimension")?, parse_num(a[2], "seed")?)?
        }
        _ => return Err(CliError::input(format!("unknown state `{t}`; see `qhelper presets`"))),
    };
    Ok(AnyState::Mixed(rho))
}

/// A two-party source on `A`, `B`.
pub fn load_source(text: &str) -> CliResult<DensityOperator> {
    let s = load_state(text)?;
    let labels = s.layout().labels();
    if labels.len() != 2 || !labels.iter().any(|l| l == "A") || !labels.iter().any(|l| l == "B") {
        return Err(CliError::input(format!("the source must be on systems A and B, got {}", s.layout())));
    }
    Ok(s.to_density())
}

/// Resolves a `--channel` argument.
pub fn load_channel(text: &str) -> CliResult<ChannelSpec> {
    let t = text.trim();
    match read_if_file(t)? {
        Some(body) => Ok(ChannelSpec::parse(&body)?),
        None => Ok(ChannelSpec::parse(t)?),
    }
}
