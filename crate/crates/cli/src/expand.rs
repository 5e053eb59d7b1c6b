use anyhow::Context;
use serde_json::json;

use relheat::expansion::{rhp_coefficients, ExpansionInput};
use relheat::polynomials::{parse_rational, RationalPoly, Variable};

use crate::config::{require, Format, Params};
use crate::evolve::quad;
use crate::output::{float, read_table, write_json, write_rows};
use crate::CliError;

const DEFAULT_NMAX: u32 = 6;

fn parse_poly(s: &str) -> Result<RationalPoly, CliError> {
    let coeffs = s
        .split(',')
        .map(|c| parse_rational(c).map_err(|e| CliError::Usage(format!("--poly: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RationalPoly::from_coeffs(coeffs, Variable::X))
}

pub fn run(p: &Params) -> Result<(), CliError> {
    p.only("expand", &["y", "nmax", "poly", "input", "rel-tol", "abs-tol", "out", "format"])?;
    let y = require(&p.y, "y", "expand")?;
    if y == 0.0 || !y.is_finite() {
        return Err(CliError::Usage(format!("--y must be finite and nonzero, got {y}")));
    }
    let input = match (&p.poly, &p.input) {
        (Some(s), None) => ExpansionInput::Polynomial(parse_poly(s)?),
        (None, Some(path)) => ExpansionInput::Tabulated(read_table(path)?),
        _ => return Err(CliError::Usage("expand needs exactly one of --poly or --input".into())),
    };
    let nmax = p.nmax.unwrap_or(DEFAULT_NMAX);
    let res = rhp_coefficients(&input, y, nmax, &quad(p)?).context("computing expansion coefficients")?;
    let out = p.out.as_deref();
    match p.format.unwrap_or(Format::Json) {
        Format::Json => write_json(
            out,
            &json!({ "y": res.y, "coefficients": res.coefficients, "error_estimates": res.error_estimates }),
        ),
        Format::Csv => {
            let rows: Vec<Vec<String>> = res
                .coefficients
                .iter()
                .zip(&res.error_estimates)
                .enumerate()
                .map(|(n, (c, e))| vec![n.to_string(), float(*c), float(*e)])
                .collect();
            write_rows(out, &["n", "coefficient", "error_estimate"], &rows)
        }
    }
}
