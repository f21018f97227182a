//! Sparse multivariate polynomials with big-integer coefficients.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fields::{ExtensionField, FieldElement, TableField};

/// Exponent vector, one entry per variable.
pub type Monomial = Vec<u32>;

/// A polynomial in `Z[vars]`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigInt>,
}

/// Graded lexicographic order, largest first.
fn grlex_desc(a: &Monomial, b: &Monomial) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl IntPolynomial {
    pub fn zero(vars: &[impl AsRef<str>]) -> Self {
        Self {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[impl AsRef<str>], c: impl Into<BigInt>) -> Self {
        let mut f = Self::zero(vars);
        let c = c.into();
        if !c.is_zero() {
            f.terms.insert(vec![0; f.vars.len()], c);
        }
        f
    }

    /// The variable `vars[index]`.
    pub fn var(vars: &[impl AsRef<str>], index: usize) -> Self {
        let mut f = Self::zero(vars);
        let mut mono = vec![0; f.vars.len()];
        mono[index] = 1;
        f.terms.insert(mono, BigInt::one());
        f
    }

    pub fn from_terms(
        vars: &[impl AsRef<str>],
        terms: impl IntoIterator<Item = (Monomial, BigInt)>,
    ) -> Result<Self> {
        let mut f = Self::zero(vars);
        for (mono, c) in terms {
            if mono.len() != f.vars.len() {
                return Err(Error::Arity {
                    expected: f.vars.len(),
                    got: mono.len(),
                });
            }
            f.add_term(mono, c);
        }
        Ok(f)
    }

    /// Parses `text` over the given variables. See [`parse`](Self::parse_infer)
    /// for the grammar.
    pub fn parse(text: &str, vars: &[impl AsRef<str>]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        Parser::new(text, Some(vars)).run()
    }

    /// Parses `text`, collecting variables in order of first appearance.
    ///
    /// Grammar: integers, identifiers, `+ - * ^` and parentheses; `^` takes
    /// a non-negative integer exponent. Whitespace is ignored.
    pub fn parse_infer(text: &str) -> Result<Self> {
        Parser::new(text, None).run()
    }

    fn add_term(&mut self, mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (graded lexicographic, descending) order.
    pub fn terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| grlex_desc(a.0, b.0));
        t
    }

    pub fn coefficient(&self, mono: &[u32]) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m[var]).max().unwrap_or(0)
    }

    /// `Some(d)` if every term has total degree `d`. The zero polynomial
    /// counts as homogeneous of degree 0.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        match degs.next() {
            None => Some(0),
            Some(d) => degs.all(|e| e == d).then_some(d),
        }
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::InvalidSpec(format!(
                "variable lists differ: {:?} vs {:?}",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(mono, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.vars, 1);
        for _ in 0..e {
            acc = acc.mul(self).expect("same variables");
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Formal partial derivative with respect to `vars[var]`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            if m[var] == 0 {
                continue;
            }
            let mut mono = m.clone();
            mono[var] -= 1;
            out.add_term(mono, c * BigInt::from(m[var]));
        }
        out
    }

    /// Substitutes the integer `value` for `vars[var]` and drops that
    /// variable.
    pub fn substitute(&self, var: usize, value: &BigInt) -> Self {
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != var)
            .map(|(_, v)| v.clone())
            .collect();
        let mut out = Self::zero(&vars);
        for (m, c) in &self.terms {
            let mut mono = m.clone();
            let e = mono.remove(var);
            out.add_term(mono, c * num_traits::pow(value.clone(), e as usize));
        }
        out
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn embed(&self, vars: &[impl AsRef<str>]) -> Result<Self> {
        let target: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .iter()
                    .position(|t| t == v)
                    .ok_or_else(|| Error::InvalidSpec(format!("variable `{v}` not in {target:?}")))
            })
            .collect::<Result<_>>()?;
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut mono = vec![0; target.len()];
            for (i, &e) in m.iter().enumerate() {
                mono[map[i]] = e;
            }
            out.add_term(mono, c.clone());
        }
        Ok(out)
    }

    /// Integer gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Evaluation over the integers.
    pub fn eval_int(&self, point: &[BigInt]) -> Result<BigInt> {
        self.check_arity(point.len())?;
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m) {
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    fn check_arity(&self, got: usize) -> Result<()> {
        if got != self.vars.len() {
            return Err(Error::Arity {
                expected: self.vars.len(),
                got,
            });
        }
        Ok(())
    }

    /// Coefficients reduced into `[0, modulus)`, for residue-class
    /// evaluation modulo `p^k`.
    pub fn residue_plan(&self, modulus: u64) -> ResiduePlan {
        let m = BigInt::from(modulus);
        let terms = self
            .terms
            .iter()
            .filter_map(|(mono, c)| {
                let r = c.mod_floor(&m).to_u64().expect("reduced below modulus");
                (r != 0).then(|| (mono.clone(), r))
            })
            .collect();
        ResiduePlan {
            modulus,
            nvars: self.vars.len(),
            terms,
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = mono
                .iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        self.vars[v].clone()
                    } else {
                        format!("{}^{}", self.vars[v], e)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Formal Jacobian: entry `(i, j)` is `∂ fs[i] / ∂ x_j`.
pub fn jacobian(fs: &[IntPolynomial]) -> Result<Vec<Vec<IntPolynomial>>> {
    if let Some(first) = fs.first() {
        for f in fs {
            first.same_vars(f)?;
        }
    }
    Ok(fs
        .iter()
        .map(|f| (0..f.nvars()).map(|j| f.derivative(j)).collect())
        .collect())
}

/// A numerator/denominator pair of integer polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: IntPolynomial,
    denominator: IntPolynomial,
}

impl RationalFunction {
    /// Divides out the common integer content and makes the leading
    /// coefficient of the denominator positive.
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self> {
        numerator.same_vars(&denominator)?;
        if denominator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut g = numerator.content().gcd(&denominator.content());
        if denominator.terms()[0].1.is_negative() {
            g = -g;
        }
        let divide = |f: &IntPolynomial| {
            let mut out = IntPolynomial::zero(&f.vars);
            for (m, c) in &f.terms {
                out.add_term(m.clone(), c / &g);
            }
            out
        };
        Ok(Self {
            numerator: divide(&numerator),
            denominator: divide(&denominator),
        })
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.denominator
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// A polynomial reduced modulo a prime: coefficients in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPolynomial {
    p: u64,
    vars: Vec<String>,
    terms: Vec<(Monomial, u64)>,
}

/// Maps coefficients through `Z -> F_p`, dropping terms that vanish.
pub fn reduce_mod_p(f: &IntPolynomial, p: u64) -> ModPolynomial {
    let plan = f.residue_plan(p);
    let mut terms = plan.terms;
    terms.sort_by(|a, b| grlex_desc(&a.0, &b.0));
    ModPolynomial {
        p,
        vars: f.vars.clone(),
        terms,
    }
}

impl ModPolynomial {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn terms(&self) -> &[(Monomial, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lifts back to integer coefficients in `[0, p)`.
    pub fn lift(&self) -> IntPolynomial {
        IntPolynomial::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, c)| (m.clone(), BigInt::from(*c))),
        )
        .expect("arity preserved")
    }

    /// Exact evaluation in `F_{p^r}` with reference arithmetic.
    pub fn evaluate(&self, field: &ExtensionField, point: &[FieldElement]) -> Result<FieldElement> {
        if field.p() != self.p {
            return Err(Error::MixedFields);
        }
        if point.len() != self.vars.len() {
            return Err(Error::Arity {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = field.zero();
        for (mono, c) in &self.terms {
            let mut t = field.from_int(*c as i128);
            for (x, &e) in point.iter().zip(mono) {
                if e > 0 {
                    t = field.mul(&t, &field.pow(x, e as u128)?)?;
                }
            }
            acc = field.add(&acc, &t)?;
        }
        Ok(acc)
    }

    /// Compiles against a table field for the counting hot loop.
    pub fn plan(&self, field: &TableField) -> EvalPlan {
        assert_eq!(field.p(), self.p, "plan built for a different characteristic");
        let nvars = self.vars.len();
        let max_deg = (0..nvars)
            .map(|v| self.terms.iter().map(|(m, _)| m[v]).max().unwrap_or(0))
            .collect();
        EvalPlan {
            nvars,
            max_deg,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), field.from_residue(*c)))
                .collect(),
        }
    }
}

impl fmt::Display for ModPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.lift(), self.p)
    }
}

/// Table-field evaluation plan: coefficients pre-encoded, powers of each
/// coordinate computed once per point.
#[derive(Debug, Clone)]
pub struct EvalPlan {
    nvars: usize,
    max_deg: Vec<u32>,
    terms: Vec<(Monomial, u32)>,
}

/// Per-variable power tables reused across evaluations.
#[derive(Debug, Clone, Default)]
pub struct PowerCache {
    powers: Vec<Vec<u32>>,
}

impl PowerCache {
    /// Fills powers `x_v^0 ..= x_v^{max_deg[v]}` for each coordinate.
    pub fn load(&mut self, field: &TableField, max_deg: &[u32], point: &[u32]) {
        self.powers.resize(point.len(), Vec::new());
        for (v, (&x, &d)) in point.iter().zip(max_deg).enumerate() {
            let row = &mut self.powers[v];
            row.clear();
            row.push(TableField::ONE);
            for k in 1..=d as usize {
                let prev = row[k - 1];
                row.push(field.mul(prev, x));
            }
        }
    }

    #[inline]
    pub fn get(&self, var: usize, e: u32) -> u32 {
        self.powers[var][e as usize]
    }
}

impl EvalPlan {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degrees(&self) -> &[u32] {
        &self.max_deg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates with powers already loaded into `cache`.
    #[inline]
    pub fn eval_cached(&self, field: &TableField, cache: &PowerCache) -> u32 {
        let mut acc = TableField::ZERO;
        for (mono, c) in &self.terms {
            let mut t = *c;
            for (v, &e) in mono.iter().enumerate() {
                if e > 0 {
                    t = field.mul(t, cache.get(v, e));
                }
            }
            acc = field.add(acc, t);
        }
        acc
    }

    pub fn eval(&self, field: &TableField, point: &[u32]) -> u32 {
        let mut cache = PowerCache::default();
        cache.load(field, &self.max_deg, point);
        self.eval_cached(field, &cache)
    }
}

/// Coefficients reduced modulo an integer `p^k`, evaluated with `u128`
/// intermediates.
#[derive(Debug, Clone)]
pub struct ResiduePlan {
    modulus: u64,
    nvars: usize,
    terms: Vec<(Monomial, u64)>,
}

impl ResiduePlan {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn eval(&self, point: &[u64]) -> u64 {
        debug_assert_eq!(point.len(), self.nvars);
        let m = self.modulus as u128;
        let mut acc = 0u128;
        for (mono, c) in &self.terms {
            let mut t = *c as u128;
            for (&x, &e) in point.iter().zip(mono) {
                for _ in 0..e {
                    t = t * x as u128 % m;
                }
            }
            acc = (acc + t) % m;
        }
        acc as u64
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vec<String>,
    fixed: bool,
}

#[derive(Debug, Clone)]
enum Ast {
    Int(BigInt),
    Var(usize),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Neg(Box<Ast>),
    Pow(Box<Ast>, u32),
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, vars: Option<Vec<String>>) -> Self {
        let fixed = vars.is_some();
        Self {
            src: text.as_bytes(),
            pos: 0,
            vars: vars.unwrap_or_default(),
            fixed,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn run(mut self) -> Result<IntPolynomial> {
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let ast = self.expr()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(lower(&ast, &self.vars))
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.unary()?)))
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.digits();
            if digits.is_empty() {
                return self.err("expected a non-negative integer exponent");
            }
            let e: u32 = match digits.parse() {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            };
            return Ok(Ast::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                Ok(Ast::Int(d.parse().expect("digits")))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Ast::Var(i)),
                    None if self.fixed => {
                        self.pos = start;
                        self.err(format!("unknown variable `{name}`"))
                    }
                    None => {
                        self.vars.push(name);
                        Ok(Ast::Var(self.vars.len() - 1))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected character `{}`", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

fn lower(ast: &Ast, vars: &[String]) -> IntPolynomial {
    let bin = |a: &Ast, b: &Ast, op: fn(&IntPolynomial, &IntPolynomial) -> Result<IntPolynomial>| {
        op(&lower(a, vars), &lower(b, vars)).expect("shared variables")
    };
    match ast {
        Ast::Int(c) => IntPolynomial::constant(vars, c.clone()),
        Ast::Var(i) => IntPolynomial::var(vars, *i),
        Ast::Add(a, b) => bin(a, b, IntPolynomial::add),
        Ast::Sub(a, b) => bin(a, b, IntPolynomial::sub),
        Ast::Mul(a, b) => bin(a, b, IntPolynomial::mul),
        Ast::Neg(a) => lower(a, vars).neg(),
        Ast::Pow(a, e) => lower(a, vars).pow(*e),
    }
}
