//! Text and CSV emission.
//!
//! All emitters are byte-deterministic for identical inputs. Series text
//! prints terms in ascending exponent as `c * z^(p/q)` joined by
//! " + "/" - ", with exponents always carrying an explicit denominator and
//! an `O(z^(K/n))` tail for the truncation window. Floats are printed with
//! 17 significant digits.

use std::fmt;
use std::fmt::Write as _;

use crate::floatseries::FloatPuiseux;
use crate::multi::MultiPuiseux;
use crate::puiseux::{EvalPoint, PuiseuxSeries};
use crate::rat::{sign, Rat};

/// 17 significant digits, scientific notation.
pub fn float17(x: f64) -> String {
    format!("{:.16e}", x)
}

fn exponent_text(e: &Rat) -> String {
    format!("{}/{}", e.numer(), e.denom())
}

fn push_term(out: &mut String, first: bool, coeff: &Rat, power: Option<String>) {
    let negative = sign(coeff) < 0;
    if first {
        if negative {
            out.push('-');
        }
    } else if negative {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    let magnitude = coeff.abs();
    match power {
        None => {
            let _ = write!(out, "{magnitude}");
        }
        Some(p) => {
            let _ = write!(out, "{magnitude} * {p}");
        }
    }
}

/// The terms of a series without the window tail; `"0"` for the zero
/// series. Output re-parses to the same normalized series.
pub fn series_terms_text(f: &PuiseuxSeries) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (e, c)) in f.terms().enumerate() {
        let power = (!e.is_zero()).then(|| format!("z^({})", exponent_text(&e)));
        push_term(&mut out, idx == 0, c, power);
    }
    out
}

/// Full text form: terms plus the `O(z^(K/n))` window tail.
pub fn series_text(f: &PuiseuxSeries) -> String {
    format!(
        "{} + O(z^({}))",
        series_terms_text(f),
        exponent_text(&f.truncation_order())
    )
}

pub fn float_series_text(f: &FloatPuiseux) -> String {
    let mut out = String::new();
    if f.is_zero() {
        out.push('0');
    } else {
        for (idx, (e, c)) in f.terms().enumerate() {
            let negative = c < 0.0;
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let _ = write!(out, "{}", float17(c.abs()));
            if !e.is_zero() {
                let _ = write!(out, " * z^({})", exponent_text(&e));
            }
        }
    }
    let _ = write!(out, " + O(z^({}))", exponent_text(&f.truncation_order()));
    out
}

/// Multivariate series text with coordinates `x1..xN` and a per-variable
/// window tail.
pub fn multi_text(f: &MultiPuiseux) -> String {
    let mut out = String::new();
    if f.is_zero() {
        out.push('0');
    } else {
        for (idx, (exps, c)) in f.terms().enumerate() {
            let mut power = String::new();
            for (var, e) in exps.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                if !power.is_empty() {
                    power.push_str(" * ");
                }
                let _ = write!(power, "x{}^({})", var + 1, exponent_text(e));
            }
            push_term(&mut out, idx == 0, c, (!power.is_empty()).then_some(power));
        }
    }
    let window = f
        .truncation_orders()
        .iter()
        .enumerate()
        .map(|(var, o)| format!("x{}^({})", var + 1, exponent_text(o)))
        .collect::<Vec<_>>()
        .join(", ");
    let _ = write!(out, " + O({window})");
    out
}

/// CSV rows `exponent,num,den` (exponent with explicit denominator),
/// header included.
pub fn series_csv(f: &PuiseuxSeries) -> String {
    let mut out = String::from("exponent,num,den\n");
    for (e, c) in f.terms() {
        let _ = writeln!(out, "{},{},{}", exponent_text(&e), c.numer(), c.denom());
    }
    out
}

pub fn float_series_csv(f: &FloatPuiseux) -> String {
    let mut out = String::from("exponent,value\n");
    for (e, c) in f.terms() {
        let _ = writeln!(out, "{},{}", exponent_text(&e), float17(c));
    }
    out
}

/// Evaluation grid as CSV columns `z,f`.
pub fn grid_csv(f: &PuiseuxSeries, points: &[EvalPoint]) -> String {
    let mut out = String::from("z,f\n");
    for z in points {
        let _ = writeln!(out, "{},{}", float17(z.value()), float17(f.eval(*z)));
    }
    out
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&series_text(self))
    }
}

impl fmt::Display for FloatPuiseux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&float_series_text(self))
    }
}

impl fmt::Display for MultiPuiseux {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&multi_text(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expression;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn zero_series_text() {
        let f = PuiseuxSeries::zero(&r(3, 1));
        assert_eq!(series_text(&f), "0 + O(z^(3/1))");
    }

    #[test]
    fn single_term_with_window() {
        let f = PuiseuxSeries::monomial(&r(1, 2), &r(3, 1), &r(3, 1)).unwrap();
        assert_eq!(series_text(&f), "3 * z^(1/2) + O(z^(3/1))");
    }

    #[test]
    fn signs_and_constants() {
        let f = PuiseuxSeries::make_series(
            &[
                (r(0, 1), r(-1, 2)),
                (r(1, 2), r(3, 1)),
                (r(1, 1), r(-2, 1)),
            ],
            &r(2, 1),
        )
        .unwrap();
        assert_eq!(
            series_terms_text(&f),
            "-1/2 + 3 * z^(1/2) - 2 * z^(1/1)"
        );
    }

    #[test]
    fn text_round_trips_through_the_parser() {
        for src in [
            "3*z^(1/2) - 2*z^(5/3)",
            "1/2 + z^(-1)",
            "-7/3 + z^(2/5) - 1000000000000000000000*z^(4/1)",
        ] {
            let ast = parse_expression(src).unwrap();
            let f = ast.to_series(&r(9, 1)).unwrap();
            let printed = series_terms_text(&f);
            let reparsed = parse_expression(&printed).unwrap().to_series(&r(9, 1)).unwrap();
            assert_eq!(reparsed, f, "via {printed:?}");
        }
    }

    #[test]
    fn csv_rows() {
        let f = PuiseuxSeries::make_series(
            &[(r(1, 2), r(3, 1)), (r(5, 3), r(-2, 1))],
            &r(3, 1),
        )
        .unwrap();
        assert_eq!(
            series_csv(&f),
            "exponent,num,den\n1/2,3,1\n5/3,-2,1\n"
        );
    }

    #[test]
    fn grid_squares() {
        let f = PuiseuxSeries::monomial(&r(1, 2), &r(1, 1), &r(2, 1)).unwrap();
        let points: Vec<EvalPoint> = [0.25, 1.0]
            .iter()
            .map(|z| EvalPoint::new(*z).unwrap())
            .collect();
        let csv = grid_csv(&f, &points);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "z,f");
        assert!(lines[1].starts_with("2.5000000000000000e-1,5.0000000000000000e-1"));
        assert!(lines[2].starts_with("1.0000000000000000e0,1.0000000000000000e0"));
    }

    #[test]
    fn float17_has_17_significant_digits() {
        assert_eq!(float17(2.0), "2.0000000000000000e0");
        assert_eq!(float17(7.389056098930650), "7.3890560989306504e0");
    }
}
