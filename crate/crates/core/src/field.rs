//! Exact arithmetic in GF(p^m).
//!
//! Elements are polynomials c_0 + c_1 x + ... + c_{m-1} x^{m-1} over GF(p),
//! reduced modulo a canonical irreducible modulus, and identified with their
//! integer encoding enc(a) = sum c_i p^i. The encoding is a bijection onto
//! [0, q) and fixes the element enumeration: 0 first, 1 second, ascending.

use thiserror::Error;

/// Default cap on the field order q = p^m.
pub const DEFAULT_MAX_ORDER: u64 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {order} exceeds the bound {bound}")]
    OrderTooLarge { order: u64, bound: u64 },
    #[error("element does not belong to this field")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not the encoding of a field element")]
    NotAnElement(u64),
}

/// An element of GF(p^m), identified by its integer encoding.
///
/// Elements carry the order of their parent field so that mixing elements of
/// different fields is detected rather than silently computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    enc: u64,
    q: u64,
}

impl FieldElement {
    pub fn encoding(self) -> u64 {
        self.enc
    }

    pub fn is_zero(self) -> bool {
        self.enc == 0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.enc)
    }
}

/// The finite field GF(p^m) with its canonical modulus.
///
/// The modulus is the lexicographically smallest monic irreducible polynomial
/// of degree m over GF(p), ordering candidates by the integer encoding of
/// their coefficient vector (c_0, ..., c_{m-1}). For m = 1 this is x itself
/// and arithmetic is plain mod-p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    m: u32,
    q: u64,
    /// m + 1 coefficients, constant term first, leading coefficient 1.
    modulus: Vec<u64>,
}

impl FiniteField {
    /// Constructs GF(p^m), requiring q = p^m <= [`DEFAULT_MAX_ORDER`].
    pub fn new(p: u64, m: u32) -> Result<Self, FieldError> {
        Self::with_max_order(p, m, DEFAULT_MAX_ORDER)
    }

    /// Constructs GF(p^m) with an explicit order bound.
    pub fn with_max_order(p: u64, m: u32, max_order: u64) -> Result<Self, FieldError> {
        if m == 0 {
            return Err(FieldError::DegreeZero);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let q = checked_pow(p, m).ok_or(FieldError::OrderTooLarge {
            order: u64::MAX,
            bound: max_order,
        })?;
        if q > max_order {
            return Err(FieldError::OrderTooLarge {
                order: q,
                bound: max_order,
            });
        }
        let modulus = canonical_modulus(p, m);
        Ok(FiniteField { p, m, q, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The field order q = p^m.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, constant term first; length m + 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { enc: 0, q: self.q }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { enc: 1, q: self.q }
    }

    /// The element with the given integer encoding.
    pub fn element(&self, enc: u64) -> Result<FieldElement, FieldError> {
        if enc < self.q {
            Ok(FieldElement { enc, q: self.q })
        } else {
            Err(FieldError::NotAnElement(enc))
        }
    }

    /// All q elements in ascending encoding order: 0, 1, 2, ...
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let q = self.q;
        (0..q).map(move |enc| FieldElement { enc, q })
    }

    fn check(&self, a: FieldElement) -> Result<(), FieldError> {
        if a.q == self.q {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn decode(&self, a: FieldElement) -> Vec<u64> {
        let mut digits = vec![0u64; self.m as usize];
        let mut x = a.enc;
        for d in digits.iter_mut() {
            *d = x % self.p;
            x /= self.p;
        }
        digits
    }

    fn encode(&self, digits: &[u64]) -> FieldElement {
        let mut enc = 0u64;
        for &d in digits.iter().rev() {
            enc = enc * self.p + d % self.p;
        }
        FieldElement { enc, q: self.q }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        let da = self.decode(a);
        let db = self.decode(b);
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        Ok(self.encode(&sum))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        let da = self.decode(a);
        let neg: Vec<u64> = da.iter().map(|x| (self.p - x) % self.p).collect();
        Ok(self.encode(&neg))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        if self.m == 1 {
            // Plain mod-p; p < 2^32 so the product fits in u64.
            return Ok(FieldElement {
                enc: (a.enc * b.enc) % self.p,
                q: self.q,
            });
        }
        let da = self.decode(a);
        let db = self.decode(b);
        let m = self.m as usize;
        let mut conv = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                conv[i + j] = (conv[i + j] + x * y) % self.p;
            }
        }
        // Fold degrees >= m using x^m = -(modulus minus leading term).
        for deg in (m..conv.len()).rev() {
            let coef = conv[deg];
            conv[deg] = 0;
            if coef == 0 {
                continue;
            }
            for i in 0..m {
                let neg = (self.p - self.modulus[i] % self.p) % self.p;
                conv[deg - m + i] = (conv[deg - m + i] + coef * neg) % self.p;
            }
        }
        Ok(self.encode(&conv[..m]))
    }

    /// a^k by square-and-multiply; a^0 = 1 for every a.
    pub fn pow(&self, a: FieldElement, k: u64) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        let mut base = a;
        let mut acc = self.one();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base)?;
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse, via a^(q-2).
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        self.pow(a, self.q - 2)
    }

    /// Absolute trace Tr(a) = a + a^p + ... + a^(p^(m-1)), returned as its
    /// integer label in [0, p).
    pub fn trace(&self, a: FieldElement) -> Result<u64, FieldError> {
        self.check(a)?;
        if self.m == 1 {
            return Ok(a.enc);
        }
        let mut acc = a;
        let mut total = a;
        for _ in 1..self.m {
            acc = self.pow(acc, self.p)?;
            total = self.add(total, acc)?;
        }
        debug_assert!(total.enc < self.p, "trace must land in the prime subfield");
        Ok(total.enc)
    }
}

fn checked_pow(p: u64, m: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..m {
        acc = acc.checked_mul(p)?;
    }
    Some(acc)
}

/// Deterministic trial-division primality test, valid for all u64 inputs that
/// pass the field order bound (and well beyond).
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree m,
/// scanning coefficient vectors in ascending integer encoding.
fn canonical_modulus(p: u64, m: u32) -> Vec<u64> {
    let m = m as usize;
    if m == 1 {
        return vec![0, 1];
    }
    let count = (0..m).fold(1u64, |acc, _| acc * p);
    for k in 0..count {
        let mut poly = vec![0u64; m + 1];
        let mut x = k;
        for c in poly.iter_mut().take(m) {
            *c = x % p;
            x /= p;
        }
        poly[m] = 1;
        if poly_is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("an irreducible polynomial of degree {m} exists over GF({p})");
}

/// Irreducibility by trial division against all monic polynomials of degree
/// 1..=deg/2.
fn poly_is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    for t in 1..=deg / 2 {
        let count = (0..t).fold(1u64, |acc, _| acc * p);
        for k in 0..count {
            let mut div = vec![0u64; t + 1];
            let mut x = k;
            for c in div.iter_mut().take(t) {
                *c = x % p;
                x /= p;
            }
            div[t] = 1;
            if poly_rem_is_zero(poly, &div, p) {
                return false;
            }
        }
    }
    true
}

/// True when `den` divides `num` over GF(p); both monic, den nonconstant.
fn poly_rem_is_zero(num: &[u64], den: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = num.to_vec();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let lead = rem[rem.len() - 1] % p;
        let shift = rem.len() - 1 - dd;
        if lead != 0 {
            for i in 0..=dd {
                let sub = (lead * (den[i] % p)) % p;
                let idx = shift + i;
                rem[idx] = (rem[idx] + p * p - sub) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c % p == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_enumeration() {
        let f = FiniteField::new(7, 1).unwrap();
        let encs: Vec<u64> = f.elements().map(|e| e.encoding()).collect();
        assert_eq!(encs, vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(f.q(), 7);
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert_eq!(FiniteField::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
        assert_eq!(FiniteField::new(1, 1).unwrap_err(), FieldError::NotPrime(1));
    }

    #[test]
    fn rejects_degree_zero_and_oversized_orders() {
        assert_eq!(FiniteField::new(3, 0).unwrap_err(), FieldError::DegreeZero);
        assert!(matches!(
            FiniteField::new(2, 13).unwrap_err(),
            FieldError::OrderTooLarge { order: 8192, .. }
        ));
        assert!(FiniteField::with_max_order(2, 13, 8192).is_ok());
    }

    /// Independent oracle for the GF(27) modulus: a cubic over GF(3) is
    /// irreducible iff it has no root, so scan coefficient encodings in order
    /// and take the first root-free candidate.
    #[test]
    fn canonical_modulus_gf27_matches_root_search() {
        let eval = |coeffs: &[u64; 3], x: u64| -> u64 {
            (x * x * x + coeffs[2] * x * x + coeffs[1] * x + coeffs[0]) % 3
        };
        let mut expected = None;
        'scan: for k in 0..27u64 {
            let coeffs = [k % 3, (k / 3) % 3, (k / 9) % 3];
            if (0..3).all(|x| eval(&coeffs, x) != 0) {
                expected = Some(vec![coeffs[0], coeffs[1], coeffs[2], 1]);
                break 'scan;
            }
        }
        let f = FiniteField::new(3, 3).unwrap();
        assert_eq!(f.modulus(), expected.unwrap().as_slice());
    }

    #[test]
    fn canonical_modulus_gf4() {
        // x^2 + x + 1 is the only irreducible quadratic over GF(2).
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FiniteField::new(7, 1).unwrap();
        let e = |x| f.element(x).unwrap();
        assert_eq!(f.mul(e(3), e(5)).unwrap(), e(1));
        assert_eq!(f.inv(e(3)).unwrap(), e(5));
        assert_eq!(f.pow(e(3), 3).unwrap(), e(6));
        assert_eq!(f.sub(e(2), e(5)).unwrap(), e(4));
        assert_eq!(f.inv(e(0)).unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn field_mismatch_is_detected() {
        let f7 = FiniteField::new(7, 1).unwrap();
        let f11 = FiniteField::new(11, 1).unwrap();
        let a = f7.element(3).unwrap();
        let b = f11.element(3).unwrap();
        assert_eq!(f7.add(a, b).unwrap_err(), FieldError::FieldMismatch);
        assert_eq!(f7.trace(b).unwrap_err(), FieldError::FieldMismatch);
    }

    #[test]
    fn lagrange_in_gf27() {
        let f = FiniteField::new(3, 3).unwrap();
        for a in f.elements().skip(1) {
            assert_eq!(f.pow(a, 26).unwrap(), f.one());
        }
    }

    #[test]
    fn trace_prime_field_is_identity() {
        let f = FiniteField::new(7, 1).unwrap();
        assert_eq!(f.trace(f.element(5).unwrap()).unwrap(), 5);
        assert_eq!(f.trace(f.zero()).unwrap(), 0);
    }

    #[test]
    fn trace_gf27_is_balanced_and_linear() {
        let f = FiniteField::new(3, 3).unwrap();
        assert_eq!(f.trace(f.zero()).unwrap(), 0);
        let mut counts = [0usize; 3];
        for a in f.elements() {
            counts[f.trace(a).unwrap() as usize] += 1;
        }
        assert_eq!(counts, [9, 9, 9]);
        for a in f.elements() {
            for b in f.elements() {
                let lhs = f.trace(f.add(a, b).unwrap()).unwrap();
                let rhs = (f.trace(a).unwrap() + f.trace(b).unwrap()) % 3;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn trace_is_frobenius_invariant() {
        for (p, m) in [(3u64, 3u32), (7, 2), (2, 5), (5, 3), (7, 3)] {
            let f = FiniteField::new(p, m).unwrap();
            for a in f.elements() {
                let fr = f.pow(a, p).unwrap();
                assert_eq!(f.trace(a).unwrap(), f.trace(fr).unwrap());
            }
        }
    }

    #[test]
    fn exhaustive_axioms_small_fields() {
        for (p, m) in [(2u64, 2u32), (3, 2), (5, 1), (3, 3), (5, 2)] {
            let f = FiniteField::new(p, m).unwrap();
            let els: Vec<FieldElement> = f.elements().collect();
            for &a in &els {
                for &b in &els {
                    assert_eq!(f.add(a, b).unwrap(), f.add(b, a).unwrap());
                    assert_eq!(f.mul(a, b).unwrap(), f.mul(b, a).unwrap());
                    for &c in &els {
                        let ab_c = f.mul(f.mul(a, b).unwrap(), c).unwrap();
                        let a_bc = f.mul(a, f.mul(b, c).unwrap()).unwrap();
                        assert_eq!(ab_c, a_bc);
                        let lhs = f.mul(a, f.add(b, c).unwrap()).unwrap();
                        let rhs = f
                            .add(f.mul(a, b).unwrap(), f.mul(a, c).unwrap())
                            .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            for &a in &els {
                if !a.is_zero() {
                    let inv = f.inv(a).unwrap();
                    assert_eq!(f.mul(a, inv).unwrap(), f.one());
                }
            }
        }
    }

    #[test]
    fn encoding_roundtrip_is_identity() {
        for (p, m) in [(3u64, 3u32), (2, 4), (13, 1), (7, 2)] {
            let f = FiniteField::new(p, m).unwrap();
            for (i, a) in f.elements().enumerate() {
                assert_eq!(a.encoding(), i as u64);
                assert_eq!(f.element(i as u64).unwrap(), a);
            }
        }
    }
}
