//! Text, JSON and LaTeX output.
//!
//! JSON keeps every integer as a decimal string. The fraction layout puts a
//! single positive integer times a `q0`-power (and variable powers) in the
//! denominator, with the numerator expanded in descending degree.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::coeffring::{CoeffFrac, Laurent};
use crate::error::{Error, Result};
use crate::mpoly::MPoly;
use crate::scalar::{scalar_from_strings, scalar_to_strings, Scalar};
use crate::toprec::{ClosedF, Key};
use crate::zseries::ZLaurentPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: i32,
    pub num: String,
    pub den: String,
}

/// A Laurent polynomial in `q0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentJson {
    pub terms: Vec<TermJson>,
}

impl LaurentJson {
    pub fn from_laurent<T: Scalar>(l: &Laurent<T>) -> Self {
        let terms = l
            .terms()
            .rev()
            .map(|(exp, c)| {
                let (num, den) = scalar_to_strings(c);
                TermJson { exp, num, den }
            })
            .collect();
        Self { terms }
    }

    pub fn from_coeff<T: Scalar>(c: &CoeffFrac<T>) -> Result<Self> {
        c.as_elem()
            .map(Self::from_laurent)
            .ok_or_else(|| Error::Normalization(format!("{c} is not a Laurent polynomial in q0")))
    }

    pub fn to_laurent<T: Scalar>(&self) -> Result<Laurent<T>> {
        let mut out = Laurent::zero();
        for t in &self.terms {
            let c = scalar_from_strings::<T>(&t.num, &t.den)
                .ok_or_else(|| Error::Cache(format!("bad rational {}/{}", t.num, t.den)))?;
            out.add_term(t.exp, c);
        }
        Ok(out)
    }
}

/// One entry of a symmetric table: orbit representative and coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KeyedJson {
    pub k: Key,
    pub coeff: LaurentJson,
}

pub fn table_json<T: Scalar>(terms: &BTreeMap<Key, CoeffFrac<T>>) -> Result<Vec<KeyedJson>> {
    terms
        .iter()
        .map(|(k, c)| Ok(KeyedJson { k: k.clone(), coeff: LaurentJson::from_coeff(c)? }))
        .collect()
}

/// `sum_e c_e z^e` as `[{z, coeff}]`, descending in `z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZTermJson {
    pub z: i32,
    pub coeff: LaurentJson,
}

pub fn zpoly_json<T: Scalar>(p: &ZLaurentPoly<T>) -> Result<Vec<ZTermJson>> {
    p.terms().rev().map(|(z, c)| Ok(ZTermJson { z, coeff: LaurentJson::from_coeff(c)? })).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ClosedFJson {
    Value { g: u32, value: LaurentJson },
    Log { g: u32, num: String, den: String, arg: LaurentJson },
}

pub fn closed_f_json<T: Scalar>(f: &ClosedF<T>) -> ClosedFJson {
    match f {
        ClosedF::Value { g, value } => ClosedFJson::Value { g: *g, value: LaurentJson::from_laurent(value) },
        ClosedF::Log { g, coeff, arg } => {
            let (num, den) = scalar_to_strings(coeff);
            ClosedFJson::Log { g: *g, num, den, arg: LaurentJson::from_laurent(arg) }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Style {
    Text,
    Latex,
}

/// `sign * (sum n_i q0^a_i v^e_i) * (x + 2q0)^(half/2) / (den q0^dq prod v^dv)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fraction {
    negative: bool,
    num: Vec<(BigInt, i32, Vec<i32>)>,
    den: BigInt,
    den_q: i32,
    den_vars: Vec<i32>,
    half: i32,
    vars: Vec<String>,
}

type Flat = Vec<(BigRational, i32, Vec<i32>)>;

fn flat_mpoly<T: Scalar>(p: &MPoly<T>) -> Result<Flat> {
    let mut out = Vec::new();
    for (e, c) in p.terms() {
        let l = c.as_elem().ok_or_else(|| Error::Normalization(format!("{c} is not a Laurent polynomial in q0")))?;
        for (q, v) in l.terms() {
            out.push((v.to_big(), q, e.clone()));
        }
    }
    Ok(out)
}

fn flat_zpoly<T: Scalar>(p: &ZLaurentPoly<T>) -> Result<Flat> {
    let mut out = Vec::new();
    for (e, c) in p.terms() {
        let l = c.as_elem().ok_or_else(|| Error::Normalization(format!("{c} is not a Laurent polynomial in q0")))?;
        for (q, v) in l.terms() {
            out.push((v.to_big(), q, vec![e]));
        }
    }
    Ok(out)
}

impl Fraction {
    fn build(flat: Flat, vars: Vec<String>, half: i32) -> Self {
        let nv = vars.len();
        let den = flat.iter().fold(BigInt::one(), |acc, (c, _, _)| acc.lcm(c.denom()));
        let qmin = flat.iter().map(|t| t.1).min().unwrap_or(0).min(0);
        let den_vars: Vec<i32> =
            (0..nv).map(|i| -flat.iter().map(|t| t.2[i]).min().unwrap_or(0).min(0)).collect();
        let mut num: Vec<(BigInt, i32, Vec<i32>)> = flat
            .into_iter()
            .map(|(c, q, e)| {
                let n = (c * BigRational::from_integer(den.clone())).to_integer();
                let e = e.iter().zip(&den_vars).map(|(a, d)| a + d).collect();
                (n, q - qmin, e)
            })
            .collect();
        num.sort_by(|a, b| {
            let da: i32 = a.2.iter().sum();
            let db: i32 = b.2.iter().sum();
            db.cmp(&da).then_with(|| b.2.cmp(&a.2)).then_with(|| a.1.cmp(&b.1))
        });
        let negative = num.first().is_some_and(|t| t.0.is_negative());
        if negative {
            for t in &mut num {
                t.0 = -t.0.clone();
            }
        }
        Self { negative, num, den, den_q: -qmin, den_vars, half, vars }
    }

    /// The z-form of a multi-point density.
    pub fn from_mpoly<T: Scalar>(p: &MPoly<T>) -> Result<Self> {
        let vars = (1..=p.nvars()).map(|i| format!("z_{i}")).collect();
        Ok(Self::build(flat_mpoly(p)?, vars, 0))
    }

    pub fn from_zpoly<T: Scalar>(p: &ZLaurentPoly<T>) -> Result<Self> {
        Ok(Self::build(flat_zpoly(p)?, vec!["z".into()], 0))
    }

    /// The x-form: `p(z) = z^k Q(z^2)` with `z^2 = x + 2 q0`.
    pub fn x_form<T: Scalar>(p: &ZLaurentPoly<T>) -> Result<Self> {
        let Some(k) = p.min_exp() else {
            return Ok(Self::build(Vec::new(), vec!["x".into()], 0));
        };
        if p.terms().any(|(e, _)| (e - k) % 2 != 0) {
            return Err(Error::Domain(format!("{p} mixes even and odd powers of z; no x-form")));
        }
        // Q(w) with w = x + 2 q0, then expanded in x
        let w = &ZLaurentPoly::z() + &ZLaurentPoly::mono(2, 1, 1, 0);
        let mut q = ZLaurentPoly::zero();
        for (e, c) in p.terms() {
            q = &q + &w.pow(((e - k) / 2) as u32).scale(c);
        }
        Ok(Self::build(flat_zpoly(&q)?, vec!["x".into()], k))
    }

    pub fn render(&self, style: Style) -> String {
        if self.num.is_empty() {
            return "0".into();
        }
        let latex = style == Style::Latex;
        let var = |name: &str| -> String {
            if latex {
                match name.split_once('_') {
                    Some((a, b)) => format!("{a}_{{{b}}}"),
                    None => name.to_string(),
                }
            } else {
                name.replace('_', "")
            }
        };
        let q0 = if latex { "q_{0}" } else { "q0" };
        let pow = |base: &str, e: i32| -> String {
            match (e, latex) {
                (1, _) => base.to_string(),
                (_, true) => format!("{base}^{{{e}}}"),
                (_, false) => format!("{base}^{e}"),
            }
        };
        let factors = |c: Option<&BigInt>, q: i32, vs: &[i32]| -> String {
            let mut parts: Vec<String> = Vec::new();
            if let Some(c) = c {
                parts.push(c.to_string());
            }
            if q != 0 {
                parts.push(pow(q0, q));
            }
            for (i, &e) in vs.iter().enumerate() {
                if e != 0 {
                    parts.push(pow(&var(&self.vars[i]), e));
                }
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            parts.join(if latex { "" } else { " * " })
        };

        let mut numer = String::new();
        for (i, (n, q, e)) in self.num.iter().enumerate() {
            let mag = n.abs();
            let bare = q == &0 && e.iter().all(|&v| v == 0);
            let c = (!mag.is_one() || bare).then_some(&mag);
            match (i, n.is_negative()) {
                (0, _) => {}
                (_, true) => numer.push_str(" - "),
                (_, false) => numer.push_str(" + "),
            }
            if i == 0 && n.is_negative() {
                numer.push('-');
            }
            numer.push_str(&factors(c, *q, e));
        }
        let sqrt_base = if latex { "(x+2q_{0})" } else { "(x + 2 * q0)" };
        let half_pow = |h: i32| -> String {
            if h % 2 == 0 {
                pow(sqrt_base, h / 2)
            } else if latex {
                format!("{sqrt_base}^{{{h}/2}}")
            } else {
                format!("{sqrt_base}^({h}/2)")
            }
        };
        let multi = self.num.len() > 1;
        if self.half > 0 {
            let f = half_pow(self.half);
            numer = if multi || numer == "1" {
                if numer == "1" {
                    f
                } else if latex {
                    format!("({numer}){f}")
                } else {
                    format!("({numer}) * {f}")
                }
            } else if latex {
                format!("{numer}{f}")
            } else {
                format!("{numer} * {f}")
            };
        }
        let mut den_parts = Vec::new();
        let has_int = !self.den.is_one();
        let den_vars_nonzero = self.den_vars.iter().any(|&d| d != 0);
        if has_int || (self.den_q == 0 && !den_vars_nonzero && self.half >= 0) {
            den_parts.push(self.den.to_string());
        }
        if self.den_q != 0 || den_vars_nonzero {
            let f = factors(None, self.den_q, &self.den_vars);
            if f != "1" {
                den_parts.push(f);
            }
        }
        if self.half < 0 {
            den_parts.push(half_pow(-self.half));
        }
        let denom = den_parts.join(if latex { "" } else { " * " });
        let sign = if self.negative { "-" } else { "" };
        if denom == "1" {
            return if self.negative && multi { format!("-({numer})") } else { format!("{sign}{numer}") };
        }
        if latex {
            format!("{sign}\\frac{{{numer}}}{{{denom}}}")
        } else {
            let n = if multi && self.half <= 0 { format!("({numer})") } else { numer };
            let d = if den_parts.len() > 1 { format!("({denom})") } else { denom };
            format!("{sign}{n} / {d}")
        }
    }
}

/// Laurent polynomial in `q0` in the fraction layout.
pub fn laurent_latex<T: Scalar>(l: &Laurent<T>) -> String {
    let flat = l.terms().map(|(q, c)| (c.to_big(), q, Vec::new())).collect();
    Fraction::build(flat, Vec::new(), 0).render(Style::Latex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reference;
    use num_rational::BigRational;

    type R = BigRational;

    #[test]
    fn laurent_json_round_trip() {
        let l = &Laurent::<R>::mono(-7, 207360, -5) + &Laurent::mono(3, 2, 1);
        let j = LaurentJson::from_laurent(&l);
        assert_eq!(j.terms[0], TermJson { exp: 1, num: "3".into(), den: "2".into() });
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains("\"num\":\"-7\""));
        let back: LaurentJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_laurent::<R>().unwrap(), l);
    }

    #[test]
    fn latex_of_printed_differentials() {
        let w21 = Fraction::from_mpoly(&reference::w21::<R>()).unwrap().render(Style::Latex);
        assert_eq!(
            w21,
            "\\frac{28z_{1}^{8} + 84q_{0}z_{1}^{6} + 252q_{0}^{2}z_{1}^{4} + 609q_{0}^{3}z_{1}^{2} + 945q_{0}^{4}}{1990656q_{0}^{7}z_{1}^{10}}"
        );
        let w03 = Fraction::from_mpoly(&reference::w03::<R>()).unwrap().render(Style::Latex);
        assert_eq!(w03, "\\frac{1}{12q_{0}z_{1}^{2}z_{2}^{2}z_{3}^{2}}");
    }

    #[test]
    fn x_form_of_printed_s() {
        let s4 = reference::s_x_form::<R>(4).unwrap();
        let f = Fraction::x_form(s4.as_poly().unwrap()).unwrap();
        assert_eq!(
            f.render(Style::Latex),
            "-\\frac{140x^{4} + 1580q_{0}x^{3} + 7476q_{0}^{2}x^{2} + 18739q_{0}^{3}x + 23499q_{0}^{4}}{9953280q_{0}^{7}(x+2q_{0})^{9/2}}"
        );
        let s0 = reference::s_x_form::<R>(0).unwrap();
        let f = Fraction::x_form(s0.as_poly().unwrap()).unwrap();
        assert_eq!(f.render(Style::Text), "(4 * x - 12 * q0) * (x + 2 * q0)^(3/2) / 5");
        let p1 = reference::p_x_form::<R>(1).unwrap();
        assert_eq!(Fraction::x_form(p1.as_poly().unwrap()).unwrap().render(Style::Latex), "-\\frac{1}{4(x+2q_{0})}");
        let mixed = &ZLaurentPoly::<R>::z() + &ZLaurentPoly::one();
        assert!(Fraction::x_form(&mixed).is_err());
    }

    #[test]
    fn free_energy_layouts() {
        let f3 = Laurent::<R>::mono(245, 429981696, -10);
        assert_eq!(f3.to_string(), "245/429981696 * q0^-10");
        assert_eq!(laurent_latex(&f3), "\\frac{245}{429981696q_{0}^{10}}");
        assert_eq!(laurent_latex(&Laurent::<R>::mono(-48, 5, 5)), "-\\frac{48q_{0}^{5}}{5}");
    }
}
