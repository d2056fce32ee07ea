//! Named test functions. Experiments and `eval` refer to functions by name;
//! there is no expression parser.

use std::f64::consts::PI;

use num_complex::Complex64;
use transforms_core::HalfLineFunction;

/// Parameters some registry entries depend on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionParams {
    pub omega: f64,
    pub r: f64,
}

impl Default for FunctionParams {
    fn default() -> Self {
        FunctionParams {
            omega: 100.0,
            r: std::f64::consts::E,
        }
    }
}

pub const NAMES: &[(&str, &str)] = &[
    ("exp", "e^{-x}"),
    ("inv-square", "1/(1+x)^2"),
    ("slow", "x/(1+x)^{pi-2}"),
    ("f1", "x/((1+x)(1+x^{1/5}))"),
    ("f2", "(1+e^{-x})/(1+x^{1/5})"),
    ("exp-over", "e^{-x}/(1+x)"),
    ("exp-cubic", "e^{-x^3}"),
    ("frac", "e^{-x} x^{1/3}/(1+x)"),
    ("bump", "e^{-x-1/x}"),
    ("osc", "e^{(i omega - 1) x^3}"),
    ("irr", "e^{-x^{-1/r}} x^{-1/r}"),
];

/// Looks up `name`; `None` for unknown names.
pub fn lookup(name: &str, params: FunctionParams) -> Option<HalfLineFunction> {
    let f = match name {
        "exp" => HalfLineFunction::real(|x| (-x).exp(), 0.0, 8.0),
        "inv-square" => HalfLineFunction::real(|x| 1.0 / ((1.0 + x) * (1.0 + x)), 0.0, 2.0),
        "slow" => HalfLineFunction::real(|x| x / (1.0 + x).powf(PI - 2.0), -1.0, PI - 3.0),
        "f1" => HalfLineFunction::real(|x| x / ((1.0 + x) * (1.0 + x.powf(0.2))), -1.0, 0.2),
        "f2" => HalfLineFunction::real(|x| (1.0 + (-x).exp()) / (1.0 + x.powf(0.2)), 0.0, 0.2),
        "exp-over" => HalfLineFunction::real(|x| (-x).exp() / (1.0 + x), 0.0, 8.0),
        "exp-cubic" => HalfLineFunction::real(|x| (-x * x * x).exp(), 0.0, 8.0),
        "frac" => HalfLineFunction::real(|x| (-x).exp() * x.cbrt() / (1.0 + x), -1.0 / 3.0, 8.0),
        "bump" => HalfLineFunction::real(|x| if x > 0.0 { (-x - 1.0 / x).exp() } else { 0.0 }, -8.0, 8.0),
        "osc" => {
            let omega = params.omega;
            HalfLineFunction::new(
                move |x: f64| {
                    let t = x * x * x;
                    Complex64::new(-t, omega * t).exp()
                },
                0.0,
                8.0,
            )
            .with_oscillation(omega, 3.0)
        }
        "irr" => {
            let inv = 1.0 / params.r;
            HalfLineFunction::real(
                move |x| {
                    let t = x.powf(-inv);
                    if t.is_finite() {
                        (-t).exp() * t
                    } else {
                        0.0
                    }
                },
                -8.0,
                inv,
            )
        }
        _ => return None,
    };
    Some(f)
}

/// A stable identifier for caching: the name plus any parameter it uses.
pub fn cache_id(name: &str, params: FunctionParams) -> String {
    match name {
        "osc" => format!("osc-omega{:e}", params.omega),
        "irr" => format!("irr-r{:e}", params.r),
        _ => name.to_string(),
    }
}
