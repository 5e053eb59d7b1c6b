use serde_json::json;

use relheat::polynomials::{
    bessel_carlitz, format_rational, gen_bessel_ab, gen_bessel_lk, hkdf, parse_rational, rhp, rnp, BivariatePoly,
    Rational, RationalPoly,
};
use relheat::stable_dist::StableIndex;

use crate::config::{require, FamilyArg, Format, Params};
use crate::output::{write_json, write_rows};
use crate::CliError;

enum Table {
    Univariate(RationalPoly),
    /// Rows indexed by the power of `x`, columns by the second variable.
    Bivariate(BivariatePoly, [&'static str; 2]),
}

fn rational_flag(value: &Option<String>, flag: &str, context: &str) -> Result<Rational, CliError> {
    let s = require(value, flag, context)?;
    parse_rational(&s).map_err(|e| CliError::Usage(format!("--{flag}: {e}")))
}

pub(crate) fn stable_index(p: &Params, context: &str) -> Result<StableIndex, CliError> {
    let (l, k) = (require(&p.l, "l", context)?, require(&p.k, "k", context)?);
    StableIndex::new(l, k).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn run(p: &Params) -> Result<(), CliError> {
    let family = require(&p.family, "family", "poly")?;
    let context = format!("poly --family {}", name(family));
    let mut allowed = vec!["family", "n", "out", "format"];
    match family {
        FamilyArg::GenAb => allowed.extend(["alpha", "beta"]),
        FamilyArg::GenLk => allowed.extend(["l", "k"]),
        _ => {}
    }
    p.only(&context, &allowed)?;
    let n = require(&p.n, "n", &context)?;
    let table = match family {
        FamilyArg::Bessel => Table::Univariate(bessel_carlitz(n)),
        FamilyArg::Hkdf => Table::Bivariate(hkdf(n), ["x", "y"]),
        FamilyArg::Rnp => Table::Bivariate(rnp(n), ["x", "t"]),
        FamilyArg::Rhp => Table::Bivariate(rhp(n), ["x", "t"]),
        FamilyArg::GenAb => {
            let a = rational_flag(&p.alpha, "alpha", &context)?;
            let b = rational_flag(&p.beta, "beta", &context)?;
            Table::Univariate(gen_bessel_ab(n, &a, &b))
        }
        FamilyArg::GenLk => Table::Univariate(gen_bessel_lk(n, stable_index(p, &context)?)),
    };
    let out = p.out.as_deref();
    match (p.format.unwrap_or(Format::Json), &table) {
        (Format::Json, Table::Univariate(poly)) => {
            let coefficients: Vec<String> = padded(poly, n as usize).iter().map(format_rational).collect();
            write_json(out, &json!({ "n": n, "coefficients": coefficients }))
        }
        (Format::Json, Table::Bivariate(poly, vars)) => {
            let coefficients: Vec<Vec<String>> =
                grid(poly).iter().map(|row| row.iter().map(format_rational).collect()).collect();
            write_json(out, &json!({ "n": n, "variables": vars, "coefficients": coefficients }))
        }
        (Format::Csv, Table::Univariate(poly)) => {
            let rows: Vec<Vec<String>> = padded(poly, n as usize)
                .iter()
                .enumerate()
                .map(|(j, c)| vec![j.to_string(), format_rational(c)])
                .collect();
            write_rows(out, &["power", "coefficient"], &rows)
        }
        (Format::Csv, Table::Bivariate(poly, vars)) => {
            let rows: Vec<Vec<String>> =
                poly.terms().map(|(&(i, j), c)| vec![i.to_string(), j.to_string(), format_rational(c)]).collect();
            let (a, b) = (format!("{}_power", vars[0]), format!("{}_power", vars[1]));
            write_rows(out, &[a.as_str(), b.as_str(), "coefficient"], &rows)
        }
    }
}

fn name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::Bessel => "bessel",
        FamilyArg::Hkdf => "hkdf",
        FamilyArg::Rnp => "rnp",
        FamilyArg::Rhp => "rhp",
        FamilyArg::GenAb => "gen_ab",
        FamilyArg::GenLk => "gen_lk",
    }
}

/// Coefficients of degrees `0..=n`, zero-filled.
fn padded(p: &RationalPoly, n: usize) -> Vec<Rational> {
    (0..=n.max(p.degree().unwrap_or(0))).map(|j| p.coeff(j)).collect()
}

fn grid(p: &BivariatePoly) -> Vec<Vec<Rational>> {
    let (di, dj) = (p.degree_first().unwrap_or(0), p.degree_second().unwrap_or(0));
    (0..=di).map(|i| (0..=dj).map(|j| p.coeff(i, j)).collect()).collect()
}
