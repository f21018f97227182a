//! Prime fields `F_p` and extension fields `F_{p^r}`.
//!
//! Two representations live here. [`ExtensionField`] and [`FieldElement`]
//! carry explicit coefficient vectors over `F_p` and are the reference
//! arithmetic. [`TableField`] is the counting kernel: every element is a
//! `u32` code (zero, or one plus a discrete logarithm to a fixed primitive
//! element) and addition goes through a Zech logarithm table, so each
//! operation is a couple of table lookups.

use crate::error::{Error, Result};

/// Default cap on the extension degree accepted by [`make_extension`].
pub const DEFAULT_MAX_DEGREE: u32 = 16;

/// Largest field order for which [`TableField`] builds its tables.
pub const TABLE_LIMIT: u64 = 1 << 22;

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, a: i128) -> u64 {
        a.rem_euclid(self.p as i128) as u64
    }

    /// The prime field viewed as the degree-1 extension.
    pub fn as_extension(&self) -> ExtensionField {
        ExtensionField {
            p: self.p,
            r: 1,
            modulus: vec![0, 1],
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p >= 1 << 32 {
        return Err(Error::PrimeTooLarge(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// An element of `F_{p^r}` as coefficients of `1, x, .., x^{r-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    p: u64,
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// `F_{p^r} = F_p[x] / (modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    p: u64,
    r: u32,
    /// Monic, low degree first, length `r + 1`.
    modulus: Vec<u64>,
}

/// Builds `F_{p^r}` with the default degree cap.
pub fn make_extension(p: u64, r: u32) -> Result<ExtensionField> {
    make_extension_with_max(p, r, DEFAULT_MAX_DEGREE)
}

/// Builds `F_{p^r}` whose modulus is the least monic irreducible of degree
/// `r`, comparing coefficient vectors lexicographically from the constant
/// term upward.
pub fn make_extension_with_max(p: u64, r: u32, max_degree: u32) -> Result<ExtensionField> {
    check_prime(p)?;
    if r == 0 || r > max_degree {
        return Err(Error::DegreeOutOfRange {
            degree: r,
            max: max_degree,
        });
    }
    let r_us = r as usize;
    // odometer over (c_0, .., c_{r-1}) with c_0 the most significant digit
    let mut low = vec![0u64; r_us];
    loop {
        let mut cand = low.clone();
        cand.push(1);
        if modpoly::is_irreducible(&cand, p) {
            return Ok(ExtensionField {
                p,
                r,
                modulus: cand,
            });
        }
        let mut i = r_us;
        loop {
            // every degree has an irreducible, so the odometer never wraps
            i -= 1;
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
        }
    }
}

impl ExtensionField {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^r`, or `None` if it does not fit in 128 bits.
    pub fn order(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.r)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            p: self.p,
            coeffs: vec![0; self.r as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer under `Z -> F_p ⊆ F_{p^r}`.
    pub fn from_int(&self, a: i128) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = a.rem_euclid(self.p as i128) as u64;
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.r as usize {
            return Err(Error::MixedFields);
        }
        let mut e = self.zero();
        for (dst, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *dst = c % self.p;
        }
        Ok(e)
    }

    /// Element with base-`p` digits of `index` as coefficients (constant
    /// term = least significant digit).
    pub fn element_from_index(&self, mut index: u128) -> FieldElement {
        let mut e = self.zero();
        for c in e.coeffs.iter_mut() {
            *c = (index % self.p as u128) as u64;
            index /= self.p as u128;
        }
        e
    }

    pub fn index_of(&self, a: &FieldElement) -> u128 {
        a.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.p != self.p || a.coeffs.len() != self.r as usize {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        Ok(FieldElement { p: self.p, coeffs })
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        let coeffs = a
            .coeffs
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        Ok(FieldElement { p: self.p, coeffs })
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.add(a, &self.neg(b)?)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(&a.coeffs, &b.coeffs))
    }

    fn mul_unchecked(&self, a: &[u64], b: &[u64]) -> FieldElement {
        let prod = modpoly::mul(a, b, self.p);
        let mut rem = modpoly::rem(&prod, &self.modulus, self.p);
        rem.resize(self.r as usize, 0);
        FieldElement {
            p: self.p,
            coeffs: rem,
        }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u128) -> Result<FieldElement> {
        self.check(a)?;
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_unchecked(&acc.coeffs, &base.coeffs);
            }
            base = self.mul_unchecked(&base.coeffs, &base.coeffs);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Multiplicative inverse via `a^(q-2)`.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.order().ok_or(Error::Unsupported(
            "field order exceeds 128 bits".into(),
        ))?;
        self.pow(a, q - 2)
    }

    pub fn frobenius(&self, a: &FieldElement) -> Result<FieldElement> {
        self.pow(a, self.p as u128)
    }

    /// Every element once, in lexicographic order of the coefficient vector
    /// read from the top coefficient down (equivalently, by
    /// [`ExtensionField::index_of`]).
    pub fn enumerate(&self, budget: u64) -> Result<impl Iterator<Item = FieldElement> + '_> {
        let q = self.order().unwrap_or(u128::MAX);
        if q > budget as u128 {
            return Err(Error::Budget {
                required: q,
                budget,
            });
        }
        Ok((0..q).map(move |i| self.element_from_index(i)))
    }
}

/// `F_{p^r}` as lookup tables over a primitive element.
///
/// Codes: `0` is zero and `k + 1` is `g^k`.
#[derive(Debug, Clone)]
pub struct TableField {
    p: u64,
    r: u32,
    q: u32,
    /// `q - 1`
    m: u32,
    /// packed (base-p index) of `g^k`
    exp: Vec<u32>,
    /// inverse of `exp`, indexed by packed value; `log[0]` unused
    log: Vec<u32>,
    /// code of `1 + g^d`
    zech: Vec<u32>,
    /// code of `-1` minus one, i.e. the log of -1
    half: u32,
    prime_codes: Vec<u32>,
}

impl TableField {
    pub fn new(field: &ExtensionField) -> Result<Self> {
        let order = field.order().unwrap_or(u128::MAX);
        if order > TABLE_LIMIT as u128 {
            return Err(Error::FieldTooLarge {
                order,
                limit: TABLE_LIMIT,
            });
        }
        let q = order as u32;
        let m = q - 1;
        let p = field.p;
        let g = primitive_element(field, m as u64);
        let mut exp = vec![0u32; m.max(1) as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = field.one();
        for k in 0..m {
            let packed = field.index_of(&cur) as u32;
            exp[k as usize] = packed;
            log[packed as usize] = k;
            cur = field.mul_unchecked(&cur.coeffs, &g.coeffs);
        }
        let zech = (0..m)
            .map(|d| {
                let packed = exp[d as usize] as u64;
                let c0 = packed % p;
                let shifted = packed - c0 + (c0 + 1) % p;
                if shifted == 0 {
                    0
                } else {
                    log[shifted as usize] + 1
                }
            })
            .collect();
        let half = if p == 2 { 0 } else { m / 2 };
        let prime_codes = (0..p)
            .map(|c| if c == 0 { 0 } else { log[c as usize] + 1 })
            .collect();
        Ok(Self {
            p,
            r: field.r,
            q,
            m,
            exp,
            log,
            zech,
            half,
            prime_codes,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub const ZERO: u32 = 0;
    pub const ONE: u32 = 1;

    /// Code of an integer's image in the prime subfield.
    #[inline]
    pub fn from_int(&self, a: i128) -> u32 {
        self.prime_codes[a.rem_euclid(self.p as i128) as usize]
    }

    #[inline]
    pub fn from_residue(&self, a: u64) -> u32 {
        self.prime_codes[a as usize]
    }

    /// Code of the element whose base-`p` index is `packed`.
    pub fn code_of_index(&self, packed: u32) -> u32 {
        if packed == 0 {
            0
        } else {
            self.log[packed as usize] + 1
        }
    }

    pub fn index_of_code(&self, code: u32) -> u32 {
        if code == 0 {
            0
        } else {
            self.exp[(code - 1) as usize]
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let (i, j) = (a - 1, b - 1);
        let d = if j >= i { j - i } else { j + self.m - i };
        let z = self.zech[d as usize];
        if z == 0 {
            return 0;
        }
        let s = i + z - 1;
        if s >= self.m {
            s - self.m + 1
        } else {
            s + 1
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let s = a - 1 + self.half;
        if s >= self.m {
            s - self.m + 1
        } else {
            s + 1
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = (a - 1) + (b - 1);
        if s >= self.m {
            s - self.m + 1
        } else {
            s + 1
        }
    }

    /// Inverse of a nonzero code.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        let k = a - 1;
        if k == 0 {
            1
        } else {
            self.m - k + 1
        }
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        (((a - 1) as u64 * (e % self.m as u64)) % self.m as u64) as u32 + 1
    }
}

fn primitive_element(field: &ExtensionField, m: u64) -> FieldElement {
    if m <= 1 {
        return field.one();
    }
    let mut factors = Vec::new();
    let mut rest = m;
    let mut d = 2;
    while d * d <= rest {
        if rest % d == 0 {
            factors.push(d);
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += 1;
    }
    if rest > 1 {
        factors.push(rest);
    }
    let one = field.one();
    (1..=m as u128)
        .map(|i| field.element_from_index(i))
        .find(|g| {
            factors
                .iter()
                .all(|&l| field.pow(g, (m / l) as u128).expect("same field") != one)
        })
        .expect("the multiplicative group of a finite field is cyclic")
}

/// Dense polynomials over `F_p` with `u64` coefficients, low degree first.
/// Requires `p < 2^32`.
pub(crate) mod modpoly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y % p) % p;
            }
        }
        trim(&mut out);
        out
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        let (mut e, mut acc, mut b) = (p - 2, 1u64, a % p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut m = m.to_vec();
        trim(&mut m);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            if c != 0 {
                for (k, &mk) in m.iter().enumerate() {
                    let idx = top - dm + k;
                    r[idx] = (r[idx] + p - c * mk % p) % p;
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = rem(&[1], m, p);
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// Ben-Or: monic `f` of degree `r` is irreducible iff
    /// `gcd(f, x^{p^i} - x) = 1` for every `i <= r/2`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let r = f.len() - 1;
        if r == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let mut xp = vec![0, 1];
        for _ in 0..r / 2 {
            xp = powmod(&xp, p as u128, f, p);
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            if diff.is_empty() {
                return false;
            }
            if gcd(f, &diff, p).len() > 1 {
                return false;
            }
        }
        true
    }
}
