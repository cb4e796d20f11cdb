//! Exact multivariate Laurent polynomial arithmetic over the rationals.
//!
//! This is the substrate for every superpotential computation: potentials,
//! chart coordinates and formal area symbols (`qL`, `qA`, `qB`) all live in
//! the same ring. Coefficients are arbitrary-precision rationals and terms are
//! kept in canonical form (no zero coefficients, no zero exponents), so
//! equality is structural.
//!
//! [`RationalExpr`] is the fraction field fragment needed during wall
//! crossing: individual rewritten terms are quotients by powers of `1 + w`,
//! and only the *sum* of a crossing is required to be Laurent again
//! ([`RationalExpr::to_laurent`]).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational scalar used for all symbolic coefficients.
pub type Rat = BigRational;

/// Errors from Laurent-ring operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    /// A substitution rule has an identically zero denominator.
    #[error("substitution rule for `{0}` has identically zero denominator")]
    ZeroDenominator(String),
    /// Division by the zero rational expression.
    #[error("division by zero rational expression")]
    ZeroDivision,
    /// A variable with a negative exponent was evaluated at zero.
    #[error("pole: variable `{var}` raised to {exp} evaluated at zero")]
    PoleAtZero { var: String, exp: i64 },
    /// Evaluation point omits a variable of the expression.
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    /// The rational expression is not a Laurent polynomial. Carries the
    /// non-divisible remainder of the attempted exact division.
    #[error("not a Laurent polynomial: division left a nonzero remainder with {} terms", .remainder.terms().len())]
    NotLaurent { remainder: Box<LaurentExpr> },
    /// Malformed serialized form.
    #[error("invalid serialized Laurent expression: {0}")]
    Parse(String),
}

// ---------------------------------------------------------------------------
// Monomial
// ---------------------------------------------------------------------------

/// A Laurent monomial: finitely many named variables with nonzero integer
/// exponents (negative allowed). The empty monomial is `1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<String, i64>,
}

impl Monomial {
    /// The unit monomial.
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Single variable to an integer power.
    pub fn var(name: &str, exp: i64) -> Self {
        let mut exps = BTreeMap::new();
        if exp != 0 {
            exps.insert(name.to_string(), exp);
        }
        Monomial { exps }
    }

    /// Build from `(name, exponent)` pairs; zero exponents are dropped.
    pub fn from_pairs<'a, I: IntoIterator<Item = (&'a str, i64)>>(pairs: I) -> Self {
        let mut m = Monomial::default();
        for (v, e) in pairs {
            if e != 0 {
                *m.exps.entry(v.to_string()).or_insert(0) += e;
            }
        }
        m.exps.retain(|_, e| *e != 0);
        m
    }

    /// Exponent of `var` (zero when absent).
    pub fn exponent(&self, var: &str) -> i64 {
        self.exps.get(var).copied().unwrap_or(0)
    }

    /// Iterate over `(variable, exponent)` pairs in name order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, i64)> {
        self.exps.iter().map(|(v, e)| (v.as_str(), *e))
    }

    /// Sum of exponents.
    pub fn total_degree(&self) -> i64 {
        self.exps.values().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Variables occurring in this monomial.
    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.exps.keys().map(|s| s.as_str())
    }

    /// Product of monomials (exponents add).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (v, e) in &other.exps {
            let slot = exps.entry(v.clone()).or_insert(0);
            *slot += e;
            if *slot == 0 {
                exps.remove(v);
            }
        }
        Monomial { exps }
    }

    /// Integer power (negative allowed).
    pub fn pow(&self, k: i64) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        let exps = self.exps.iter().map(|(v, e)| (v.clone(), e * k)).collect();
        Monomial { exps }
    }

    pub fn inv(&self) -> Monomial {
        self.pow(-1)
    }

    /// True iff `self / other` has only nonnegative exponents.
    pub fn divisible_by(&self, other: &Monomial) -> bool {
        other.exps.iter().all(|(v, e)| self.exponent(v) >= *e)
    }

    /// `self / other` as a monomial (exponents subtract).
    pub fn div(&self, other: &Monomial) -> Monomial {
        self.mul(&other.inv())
    }

    /// Graded-lexicographic comparison relative to a declared variable order.
    pub fn grlex_cmp(&self, other: &Monomial, order: &VarOrder) -> std::cmp::Ordering {
        let d = self.total_degree().cmp(&other.total_degree());
        if d != std::cmp::Ordering::Equal {
            return d;
        }
        for v in order.names() {
            let c = self.exponent(v).cmp(&other.exponent(v));
            if c != std::cmp::Ordering::Equal {
                return c;
            }
        }
        // Variables outside the declared order break ties structurally.
        self.exps.cmp(&other.exps)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Variable order (declared at ring construction; used for display/serialization)
// ---------------------------------------------------------------------------

/// A fixed variable order. Terms are displayed and serialized in descending
/// graded-lexicographic order relative to it, so golden files are stable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarOrder(Vec<String>);

impl VarOrder {
    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(names: I) -> Self {
        VarOrder(names.into_iter().map(Into::into).collect())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|s| s.as_str())
    }
}

// ---------------------------------------------------------------------------
// LaurentExpr
// ---------------------------------------------------------------------------

/// A finite sum of rational multiples of Laurent monomials, in canonical form:
/// the term map has unique monomial keys and no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentExpr {
    terms: BTreeMap<Monomial, Rat>,
}

/// `p/q` rendering of an exact rational.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p` or `p/q` into an exact rational.
pub fn rat_from_string(s: &str) -> Result<Rat, LaurentError> {
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| LaurentError::Parse(format!("bad integer `{t}`: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(LaurentError::Parse("zero denominator".into()));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Convenience: integer to rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Convenience: fraction to rational.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

impl LaurentExpr {
    pub fn zero() -> Self {
        LaurentExpr::default()
    }

    pub fn one() -> Self {
        LaurentExpr::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        LaurentExpr { terms }
    }

    /// The expression `var^exp`.
    pub fn var(name: &str, exp: i64) -> Self {
        LaurentExpr::term(Monomial::var(name, exp), Rat::one())
    }

    /// A single term `coeff * mono`.
    pub fn term(mono: Monomial, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        LaurentExpr { terms }
    }

    /// Build from `(monomial, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(it: I) -> Self {
        let mut p = LaurentExpr::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, mono: Monomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono.clone()).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    /// Number of terms in canonical form.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// All variables occurring in the expression.
    pub fn vars(&self) -> BTreeSet<String> {
        self.terms
            .keys()
            .flat_map(|m| m.vars().map(str::to_string))
            .collect()
    }

    /// Multiset of coefficients, sorted (used for mutation-invariance checks).
    pub fn coefficient_multiset(&self) -> Vec<Rat> {
        let mut cs: Vec<Rat> = self.terms.values().cloned().collect();
        cs.sort();
        cs
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |a, b| a + b)
    }

    pub fn add(&self, other: &LaurentExpr) -> LaurentExpr {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentExpr {
        LaurentExpr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentExpr) -> LaurentExpr {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentExpr) -> LaurentExpr {
        let mut out = LaurentExpr::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> LaurentExpr {
        if c.is_zero() {
            return LaurentExpr::zero();
        }
        LaurentExpr {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiply by a single monomial (a ring unit); always exact.
    pub fn mul_monomial(&self, m: &Monomial) -> LaurentExpr {
        LaurentExpr {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    /// Nonnegative integer power by repeated squaring.
    pub fn pow(&self, k: u32) -> LaurentExpr {
        let mut result = LaurentExpr::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        result
    }

    /// Termwise `d/dv`, with Laurent exponents: `d/dv v^e = e v^{e-1}`.
    pub fn partial_derivative(&self, var: &str) -> LaurentExpr {
        let mut out = LaurentExpr::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            out.add_term(m.mul(&Monomial::var(var, -1)), c * rat(e));
        }
        out
    }

    /// The logarithmic derivative `v * dp/dv`, the building block of the pearl
    /// differential and of critical-point equations.
    pub fn log_derivative(&self, var: &str) -> LaurentExpr {
        self.partial_derivative(var).mul(&LaurentExpr::var(var, 1))
    }

    /// Simultaneous substitution of rational expressions for variables.
    /// Variables without a rule are kept fixed.
    pub fn substitute(
        &self,
        rules: &BTreeMap<String, RationalExpr>,
    ) -> Result<RationalExpr, LaurentError> {
        for (v, r) in rules {
            if r.den.is_zero() {
                return Err(LaurentError::ZeroDenominator(v.clone()));
            }
        }
        let mut acc = RationalExpr::zero();
        for (m, c) in &self.terms {
            let mut term = RationalExpr::from_laurent(LaurentExpr::constant(c.clone()));
            for (v, e) in m.iter() {
                match rules.get(v) {
                    Some(rule) => term = term.mul(&rule.pow(e)?),
                    None => {
                        term = term.mul(&RationalExpr::from_laurent(LaurentExpr::var(v, e)))
                    }
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Evaluate at a complex point. Every variable must be assigned; variables
    /// with negative exponents must be assigned nonzero values.
    pub fn eval_complex(
        &self,
        point: &BTreeMap<String, Complex64>,
    ) -> Result<Complex64, LaurentError> {
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut val = Complex64::new(
                c.numer().to_f64().ok_or_else(|| {
                    LaurentError::Parse("coefficient overflows f64".into())
                })?,
                0.0,
            ) / c.denom().to_f64().unwrap_or(f64::NAN);
            for (v, e) in m.iter() {
                let z = point
                    .get(v)
                    .ok_or_else(|| LaurentError::MissingAssignment(v.to_string()))?;
                if e < 0 && z.norm() == 0.0 {
                    return Err(LaurentError::PoleAtZero { var: v.to_string(), exp: e });
                }
                val *= z.powi(e as i32);
            }
            total += val;
        }
        Ok(total)
    }

    /// Monomial content: for each variable the minimal exponent over all
    /// terms (zero counts when a term omits the variable). Dividing by the
    /// content leaves a polynomial with no common monomial factor.
    pub fn content(&self) -> Monomial {
        let mut mins: BTreeMap<String, i64> = BTreeMap::new();
        let vars = self.vars();
        for v in &vars {
            let m = self
                .terms
                .keys()
                .map(|mono| mono.exponent(v))
                .min()
                .unwrap_or(0);
            if m != 0 {
                mins.insert(v.clone(), m);
            }
        }
        Monomial { exps: mins }
    }

    /// Leading term under descending grlex for the given order.
    fn leading_term(&self, order: &VarOrder) -> Option<(&Monomial, &Rat)> {
        self.terms
            .iter()
            .max_by(|(m1, _), (m2, _)| m1.grlex_cmp(m2, order))
    }

    /// Terms sorted by descending graded-lexicographic order.
    pub fn sorted_terms(&self, order: &VarOrder) -> Vec<(&Monomial, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(m1, _), (m2, _)| m2.grlex_cmp(m1, order));
        v
    }

    /// Render with the given display order.
    pub fn display(&self, order: &VarOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push_str("-");
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if m.is_one() {
                out.push_str(&rat_to_string(&abs));
            } else if abs.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{}*{}", rat_to_string(&abs), m));
            }
        }
        out
    }

    /// JSON form: array of `{"coeff": "p/q", "exps": {var: int}}` sorted by
    /// descending grlex in the declared order. Round-trips bit-exactly.
    pub fn to_json(&self, order: &VarOrder) -> serde_json::Value {
        let arr: Vec<serde_json::Value> = self
            .sorted_terms(order)
            .into_iter()
            .map(|(m, c)| {
                let exps: serde_json::Map<String, serde_json::Value> = m
                    .iter()
                    .map(|(v, e)| (v.to_string(), serde_json::Value::from(e)))
                    .collect();
                serde_json::json!({ "coeff": rat_to_string(c), "exps": exps })
            })
            .collect();
        serde_json::Value::Array(arr)
    }

    /// Parse the JSON form produced by [`LaurentExpr::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<LaurentExpr, LaurentError> {
        let arr = v
            .as_array()
            .ok_or_else(|| LaurentError::Parse("expected array of terms".into()))?;
        let mut p = LaurentExpr::zero();
        for t in arr {
            let coeff = t
                .get("coeff")
                .and_then(|c| c.as_str())
                .ok_or_else(|| LaurentError::Parse("term missing `coeff`".into()))?;
            let exps = t
                .get("exps")
                .and_then(|e| e.as_object())
                .ok_or_else(|| LaurentError::Parse("term missing `exps`".into()))?;
            let mono = Monomial::from_pairs(exps.iter().map(|(k, val)| {
                (k.as_str(), val.as_i64().unwrap_or(0))
            }));
            p.add_term(mono, rat_from_string(coeff)?);
        }
        Ok(p)
    }
}

// ---------------------------------------------------------------------------
// RationalExpr
// ---------------------------------------------------------------------------

/// A quotient of Laurent expressions, reduced on construction by pulling a
/// common monomial factor out of numerator and denominator. Intermediate
/// wall-crossing terms live here; [`RationalExpr::to_laurent`] recovers the
/// Laurent normal form when the denominator divides the numerator up to a
/// monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalExpr {
    num: LaurentExpr,
    den: LaurentExpr,
}

impl RationalExpr {
    /// Construct `num/den`; fails when `den` is identically zero.
    pub fn new(num: LaurentExpr, den: LaurentExpr) -> Result<RationalExpr, LaurentError> {
        if den.is_zero() {
            return Err(LaurentError::ZeroDivision);
        }
        Ok(RationalExpr { num, den }.reduce())
    }

    pub fn from_laurent(p: LaurentExpr) -> RationalExpr {
        RationalExpr { num: p, den: LaurentExpr::one() }
    }

    pub fn zero() -> RationalExpr {
        RationalExpr::from_laurent(LaurentExpr::zero())
    }

    pub fn numerator(&self) -> &LaurentExpr {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentExpr {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Pull the common monomial factor out of numerator and denominator.
    fn reduce(self) -> RationalExpr {
        if self.num.is_zero() {
            return RationalExpr { num: LaurentExpr::zero(), den: LaurentExpr::one() };
        }
        let cn = self.num.content();
        let cd = self.den.content();
        // componentwise min of the two contents
        let vars: BTreeSet<String> = cn.vars().chain(cd.vars()).map(str::to_string).collect();
        let g = Monomial::from_pairs(
            vars.iter()
                .map(|v| (v.as_str(), cn.exponent(v).min(cd.exponent(v)))),
        );
        let ginv = g.inv();
        RationalExpr {
            num: self.num.mul_monomial(&ginv),
            den: self.den.mul_monomial(&ginv),
        }
    }

    pub fn add(&self, other: &RationalExpr) -> RationalExpr {
        if self.den == other.den {
            return RationalExpr { num: self.num.add(&other.num), den: self.den.clone() }
                .reduce();
        }
        RationalExpr {
            num: self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            den: self.den.mul(&other.den),
        }
        .reduce()
    }

    pub fn mul(&self, other: &RationalExpr) -> RationalExpr {
        RationalExpr {
            num: self.num.mul(&other.num),
            den: self.den.mul(&other.den),
        }
        .reduce()
    }

    pub fn neg(&self) -> RationalExpr {
        RationalExpr { num: self.num.neg(), den: self.den.clone() }
    }

    /// Integer power; negative powers swap numerator and denominator and fail
    /// on a zero numerator.
    pub fn pow(&self, k: i64) -> Result<RationalExpr, LaurentError> {
        if k >= 0 {
            Ok(RationalExpr {
                num: self.num.pow(k as u32),
                den: self.den.pow(k as u32),
            }
            .reduce())
        } else {
            if self.num.is_zero() {
                return Err(LaurentError::ZeroDivision);
            }
            Ok(RationalExpr {
                num: self.den.pow((-k) as u32),
                den: self.num.pow((-k) as u32),
            }
            .reduce())
        }
    }

    /// Equality as rational functions (cross multiplication).
    pub fn eq_rational(&self, other: &RationalExpr) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Laurent normal form, when the denominator divides the numerator up to
    /// a monomial; otherwise a [`LaurentError::NotLaurent`] carrying the
    /// remainder of the exact division.
    pub fn to_laurent(&self) -> Result<LaurentExpr, LaurentError> {
        if self.num.is_zero() {
            return Ok(LaurentExpr::zero());
        }
        // Shift numerator and denominator to honest polynomials, divide
        // there, then restore the monomial factor. Content is multiplicative,
        // so a Laurent quotient exists iff the polynomial division is exact.
        let cn = self.num.content();
        let cd = self.den.content();
        let num_poly = self.num.mul_monomial(&cn.inv());
        let den_poly = self.den.mul_monomial(&cd.inv());
        let order = VarOrder::new(
            num_poly
                .vars()
                .union(&den_poly.vars())
                .cloned()
                .collect::<Vec<_>>(),
        );
        let (lt_den_m, lt_den_c) = den_poly
            .leading_term(&order)
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(LaurentError::ZeroDivision)?;
        let mut remainder = num_poly;
        let mut quotient = LaurentExpr::zero();
        while !remainder.is_zero() {
            let (lt_m, lt_c) = {
                let (m, c) = remainder.leading_term(&order).unwrap();
                (m.clone(), c.clone())
            };
            if !lt_m.divisible_by(&lt_den_m) {
                return Err(LaurentError::NotLaurent {
                    remainder: Box::new(remainder.mul_monomial(&cn.mul(&cd.inv()))),
                });
            }
            let q = LaurentExpr::term(lt_m.div(&lt_den_m), lt_c / &lt_den_c);
            remainder = remainder.sub(&q.mul(&den_poly));
            quotient = quotient.add(&q);
        }
        Ok(quotient.mul_monomial(&cn.mul(&cd.inv())))
    }

    /// Evaluate numerator/denominator at a complex point.
    pub fn eval_complex(
        &self,
        point: &BTreeMap<String, Complex64>,
    ) -> Result<Complex64, LaurentError> {
        let n = self.num.eval_complex(point)?;
        let d = self.den.eval_complex(point)?;
        if d.norm() == 0.0 {
            return Err(LaurentError::ZeroDivision);
        }
        Ok(n / d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w() -> LaurentExpr {
        LaurentExpr::var("w", 1)
    }

    fn one_plus_w() -> LaurentExpr {
        LaurentExpr::one().add(&w())
    }

    #[test]
    fn add_cancels_constants() {
        // (1+w) + (-1) = w
        let s = one_plus_w().add(&LaurentExpr::constant(rat(-1)));
        assert_eq!(s, w());
    }

    #[test]
    fn add_zero_is_identity() {
        let p = LaurentExpr::var("z1", 1).add(&LaurentExpr::var("z2", 1));
        assert_eq!(p.add(&LaurentExpr::zero()), p);
    }

    #[test]
    fn assemble_clifford_potential_termwise() {
        // zh1 + zh1^3 zh2 + qL zh1^-4 zh2^-1, assembled term by term
        let w_clif = LaurentExpr::var("zh1", 1)
            .add(&LaurentExpr::term(
                Monomial::from_pairs([("zh1", 3), ("zh2", 1)]),
                rat(1),
            ))
            .add(&LaurentExpr::term(
                Monomial::from_pairs([("qL", 1), ("zh1", -4), ("zh2", -1)]),
                rat(1),
            ));
        assert_eq!(w_clif.num_terms(), 3);
        assert_eq!(
            w_clif.coeff(&Monomial::from_pairs([("zh1", 3), ("zh2", 1)])),
            rat(1)
        );
    }

    #[test]
    fn square_of_binomial() {
        let sq = one_plus_w().mul(&one_plus_w());
        assert_eq!(sq.coeff(&Monomial::one()), rat(1));
        assert_eq!(sq.coeff(&Monomial::var("w", 1)), rat(2));
        assert_eq!(sq.coeff(&Monomial::var("w", 2)), rat(1));
        assert_eq!(sq.num_terms(), 3);
    }

    #[test]
    fn binomial_fifth_power_coefficients() {
        let p = one_plus_w().pow(5);
        let coeffs: Vec<Rat> = (0..=5)
            .map(|k| p.coeff(&Monomial::var("w", k)))
            .collect();
        assert_eq!(coeffs, vec![rat(1), rat(5), rat(10), rat(10), rat(5), rat(1)]);
    }

    #[test]
    fn unit_times_inverse() {
        let u = LaurentExpr::var("u", 1);
        let uinv = LaurentExpr::var("u", -1);
        assert_eq!(u.mul(&uinv), LaurentExpr::one());
    }

    #[test]
    fn substitute_u_to_sum() {
        // u -> z1 + z2 applied to u
        let mut rules = BTreeMap::new();
        rules.insert(
            "u".to_string(),
            RationalExpr::from_laurent(LaurentExpr::var("z1", 1).add(&LaurentExpr::var("z2", 1))),
        );
        let r = LaurentExpr::var("u", 1).substitute(&rules).unwrap();
        let expected = LaurentExpr::var("z1", 1).add(&LaurentExpr::var("z2", 1));
        assert!(r.eq_rational(&RationalExpr::from_laurent(expected)));
    }

    #[test]
    fn substitute_w_quotient() {
        // w -> z1/z2 applied to 1+w gives (z2+z1)/z2
        let mut rules = BTreeMap::new();
        rules.insert(
            "w".to_string(),
            RationalExpr::new(LaurentExpr::var("z1", 1), LaurentExpr::var("z2", 1)).unwrap(),
        );
        let r = one_plus_w().substitute(&rules).unwrap();
        let expected = RationalExpr::new(
            LaurentExpr::var("z1", 1).add(&LaurentExpr::var("z2", 1)),
            LaurentExpr::var("z2", 1),
        )
        .unwrap();
        assert!(r.eq_rational(&expected));
    }

    #[test]
    fn substitute_identity_rules() {
        let p = LaurentExpr::var("u", -2).add(&LaurentExpr::var("w", 3));
        let mut rules = BTreeMap::new();
        rules.insert("u".into(), RationalExpr::from_laurent(LaurentExpr::var("u", 1)));
        rules.insert("w".into(), RationalExpr::from_laurent(LaurentExpr::var("w", 1)));
        let r = p.substitute(&rules).unwrap();
        assert_eq!(r.to_laurent().unwrap(), p);
    }

    #[test]
    fn substitute_rejects_zero_denominator() {
        let mut rules = BTreeMap::new();
        rules.insert(
            "u".to_string(),
            RationalExpr { num: LaurentExpr::one(), den: LaurentExpr::zero() },
        );
        let e = LaurentExpr::var("u", 1).substitute(&rules);
        assert!(matches!(e, Err(LaurentError::ZeroDenominator(_))));
    }

    #[test]
    fn derivative_basics() {
        let u = LaurentExpr::var("u", 1);
        assert_eq!(u.partial_derivative("u"), LaurentExpr::one());
        let p = LaurentExpr::var("u", -2);
        assert_eq!(p.partial_derivative("u"), LaurentExpr::term(Monomial::var("u", -3), rat(-2)));
    }

    #[test]
    fn eval_simple() {
        let p = one_plus_w();
        let mut pt = BTreeMap::new();
        pt.insert("w".to_string(), Complex64::new(0.125, 0.0));
        assert!((p.eval_complex(&pt).unwrap() - Complex64::new(1.125, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eval_pole_is_error() {
        let p = LaurentExpr::var("u", -1);
        let mut pt = BTreeMap::new();
        pt.insert("u".to_string(), Complex64::new(0.0, 0.0));
        assert!(matches!(
            p.eval_complex(&pt),
            Err(LaurentError::PoleAtZero { .. })
        ));
    }

    #[test]
    fn to_laurent_divides_monomial() {
        // (z1+z2)/z2 = z1 z2^-1 + 1
        let q = RationalExpr::new(
            LaurentExpr::var("z1", 1).add(&LaurentExpr::var("z2", 1)),
            LaurentExpr::var("z2", 1),
        )
        .unwrap();
        let l = q.to_laurent().unwrap();
        assert_eq!(
            l,
            LaurentExpr::one().add(&LaurentExpr::term(
                Monomial::from_pairs([("z1", 1), ("z2", -1)]),
                rat(1)
            ))
        );
    }

    #[test]
    fn to_laurent_cancels_common_factor() {
        // u(1+w)/(1+w) = u
        let q = RationalExpr::new(
            LaurentExpr::var("u", 1).mul(&one_plus_w()),
            one_plus_w(),
        )
        .unwrap();
        assert_eq!(q.to_laurent().unwrap(), LaurentExpr::var("u", 1));
    }

    #[test]
    fn to_laurent_expansion_matches_direct_mul() {
        // (1+w)^2 qL u^-2 as a RationalExpr with denominator 1
        let p = one_plus_w()
            .pow(2)
            .mul(&LaurentExpr::term(Monomial::from_pairs([("qL", 1), ("u", -2)]), rat(1)));
        let q = RationalExpr::from_laurent(p.clone());
        assert_eq!(q.to_laurent().unwrap(), p);
        assert_eq!(p.num_terms(), 3);
    }

    #[test]
    fn to_laurent_failure_carries_remainder() {
        // (1+w)/u is not Laurent in any sense that cancels u
        let q = RationalExpr::new(one_plus_w(), LaurentExpr::var("u", 1).add(&LaurentExpr::one()))
            .unwrap();
        match q.to_laurent() {
            Err(LaurentError::NotLaurent { remainder }) => assert!(!remainder.is_zero()),
            other => panic!("expected NotLaurent, got {other:?}"),
        }
    }

    #[test]
    fn json_round_trip_bit_exact() {
        let order = VarOrder::new(["u", "w", "qL"]);
        let p = LaurentExpr::from_terms([
            (Monomial::from_pairs([("u", -5), ("w", -1), ("qL", 2)]), rat(1)),
            (Monomial::var("u", 1), rat(1)),
            (Monomial::from_pairs([("u", -2), ("qL", 1)]), rat(2)),
            (Monomial::one(), ratio(-7, 3)),
        ]);
        let j = p.to_json(&order);
        let back = LaurentExpr::from_json(&j).unwrap();
        assert_eq!(back, p);
        assert_eq!(back.to_json(&order), j);
        let text = serde_json::to_string(&j).unwrap();
        let reparsed = LaurentExpr::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(reparsed, p);
    }

    #[test]
    fn display_is_deterministic() {
        let order = VarOrder::new(["z1", "z2", "qL"]);
        let p = LaurentExpr::from_terms([
            (Monomial::var("z1", 1), rat(1)),
            (Monomial::var("z2", 1), rat(1)),
            (Monomial::from_pairs([("qL", 1), ("z1", -1), ("z2", -1)]), rat(1)),
        ]);
        assert_eq!(p.display(&order), "z1 + z2 + qL*z1^-1*z2^-1");
    }
}
