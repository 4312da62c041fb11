//! The `--fn` mini-grammar: `name:key=val,...`.
//!
//! | spec            | function                  |
//! |-----------------|---------------------------|
//! | `exp:z=0.5`     | `e^{zx}` (`im=` adds an imaginary part to `z`) |
//! | `expi:p=0.5`    | `e^{ipx}`                 |
//! | `poly:n=4`      | `xⁿ`                      |
//! | `cheb:Y3`       | `Y_3`; `cheb:X3` is `X_{3,∞}`, `cheb:X3,q=2` is `X_{3,2}` |
//! | `log:t=0.3`     | `log(1 − xt + t²)`        |

use std::collections::BTreeMap;

use nbtrace::{BasisTag, FunctionSpec};
use num_complex::Complex64;

use crate::error::CliError;

pub const BUILTINS: &str =
    "exp:z=REAL[,im=REAL], expi:p=REAL, poly:n=INT, cheb:Y<r>|X<r>[,q=INT], log:t=REAL";

fn usage(msg: String) -> CliError {
    CliError::Usage(format!("{msg}; builtins are {BUILTINS}"))
}

pub fn parse_fn(spec: &str) -> Result<FunctionSpec, CliError> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut bare = Vec::new();
    let mut keys = BTreeMap::new();
    for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('=') {
            Some((k, v)) => {
                if keys.insert(k.trim(), v.trim()).is_some() {
                    return Err(usage(format!("key {k:?} given twice in {spec:?}")));
                }
            }
            None => bare.push(part),
        }
    }
    let allow = |expected_bare: usize, allowed: &[&str]| -> Result<(), CliError> {
        if bare.len() != expected_bare {
            return Err(usage(format!("malformed function {spec:?}")));
        }
        match keys.keys().find(|k| !allowed.contains(k)) {
            Some(k) => Err(usage(format!("{name} does not take {k:?}"))),
            None => Ok(()),
        }
    };
    let real = |key: &str, default: Option<f64>| -> Result<f64, CliError> {
        match keys.get(key) {
            Some(v) => v
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| usage(format!("{name}: {key}={v} is not a finite number"))),
            None => default.ok_or_else(|| usage(format!("{name} needs {key}="))),
        }
    };
    match name.trim() {
        "exp" => {
            allow(0, &["z", "im"])?;
            Ok(FunctionSpec::exp_complex(Complex64::new(
                real("z", None)?,
                real("im", Some(0.0))?,
            )))
        }
        "expi" => {
            allow(0, &["p"])?;
            Ok(FunctionSpec::oscillatory_exp(real("p", None)?))
        }
        "poly" => {
            allow(0, &["n"])?;
            let n = keys
                .get("n")
                .ok_or_else(|| usage("poly needs n=".into()))?
                .parse::<u32>()
                .map_err(|_| usage("poly: n must be a non-negative integer".into()))?;
            Ok(FunctionSpec::monomial(n))
        }
        "cheb" => {
            allow(1, &["q"])?;
            let tag = bare[0];
            let (family, index) = tag.split_at(tag.len().min(1));
            let r = index.parse::<usize>().map_err(|_| {
                usage(format!(
                    "cheb: bad index in {tag:?}, expected e.g. Y3 or X3"
                ))
            })?;
            let basis = match (family, keys.get("q")) {
                ("Y", None) => BasisTag::Y,
                ("X", None) => BasisTag::Xinf,
                ("X", Some(q)) => {
                    let q = q
                        .parse::<u64>()
                        .ok()
                        .filter(|&q| q >= 1)
                        .ok_or_else(|| usage(format!("cheb: q={q} must be an integer >= 1")))?;
                    BasisTag::for_q(q)
                }
                ("Y", Some(_)) => return Err(usage("cheb: Y takes no q".into())),
                _ => return Err(usage(format!("cheb: unknown family in {tag:?}"))),
            };
            Ok(FunctionSpec::chebyshev(basis, r))
        }
        "log" => {
            allow(0, &["t"])?;
            Ok(FunctionSpec::shifted_log(real("t", None)?))
        }
        other => Err(usage(format!("unknown function {other:?}"))),
    }
}
