use crate::ricalc::{parse, parse_expr, scale, RIStatement};

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] =
    &["teleportation", "superdense", "merging", "fqsw", "qrst", "schumacher", "ea_capacity"];

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "teleportation" => "2 [c->c] + [qq] >= [q->q]",
        "superdense" => "[q->q] + [qq] >= 2 [c->c]",
        "merging" => "<psi_A|B|R> + I(A;R) [c->c] + H(A|B) [qq] >= <psi_|AB|R>",
        "fqsw" => "<psi_A|B|R> + 0.5 I(A;R) [q->q] >= 0.5 I(A;B) [qq] + <psi_|AB|R>",
        "qrst" => "0.5 I(R;B) [q->q] + 0.5 I(E;B) [qq] >= <N:rho_A>",
        "schumacher" => "H(B) [q->q] >= <rho_B>",
        "ea_capacity" => "<N> + inf [qq] >= Q(N) [q->q]",
        _ => return None,
    })
}

/// A named standard RI.
pub fn builtin(name: &str) -> Option<RIStatement> {
    source(name).map(|s| parse(s).expect("built-in RI parses"))
}

/// Target and steps for deriving state merging from FQSW plus
/// teleportation of the transmitted qubits. `corrupt` swaps the FQSW qubit
/// coefficient 0.5 for 0.4.
pub fn merging_certificate(corrupt: bool) -> (RIStatement, Vec<RIStatement>) {
    let target = builtin("merging").expect("known");
    let teleport = scale(&builtin("teleportation").expect("known"), &parse_expr("0.5 I(A;R)").expect("valid"));
    let fqsw = if corrupt {
        parse("<psi_A|B|R> + 0.4 I(A;R) [q->q] >= 0.5 I(A;B) [qq] + <psi_|AB|R>").expect("valid")
    } else {
        builtin("fqsw").expect("known")
    };
    (target, vec![teleport, fqsw])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_builtins_round_trip() {
        for name in BUILTIN_NAMES {
            let ri = builtin(name).unwrap();
            assert_eq!(parse(&ri.to_string()).unwrap(), ri, "{name}");
        }
        assert!(builtin("nope").is_none());
    }
}
