//! Exact scalar rings: dyadic rationals, Gaussian dyadics and dyadic quaternions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Ring of coefficients a multivector can carry.
///
/// Multiplication need not commute (quaternions); callers that care about
/// order always put the left operand first.
pub trait Scalar:
    Copy + Eq + fmt::Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Complex (or quaternion) conjugate; identity on real scalars.
    fn conj(&self) -> Self;
    fn from_dyadic(d: Dyadic) -> Self;

    /// Largest power of two appearing in any denominator.
    fn log2den(&self) -> u32;

    /// Sign and magnitude text used when printing a sum of terms.
    /// The magnitude is empty when it equals one.
    fn signed_text(&self) -> (bool, String);

    fn from_int(v: i64) -> Self {
        Self::from_dyadic(Dyadic::from_int(v))
    }
}

/// `num / 2^exp` in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Dyadic {
    num: i128,
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    pub fn new(num: i128, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn from_int(v: i64) -> Self {
        Dyadic { num: v as i128, exp: 0 }
    }

    /// 2^e for any integer e.
    pub fn pow2(e: i32) -> Self {
        if e >= 0 {
            Dyadic::new(1i128 << e, 0)
        } else {
            Dyadic::new(1, (-e) as u32)
        }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn log2den(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn abs(&self) -> Self {
        Dyadic { num: self.num.abs(), exp: self.exp }
    }

    fn normalize(&mut self) {
        if self.num == 0 {
            self.exp = 0;
            return;
        }
        let tz = self.num.trailing_zeros().min(self.exp);
        self.num >>= tz;
        self.exp -= tz;
    }

    fn aligned(a: Dyadic, b: Dyadic) -> (i128, i128, u32) {
        let e = a.exp.max(b.exp);
        let sa = shl(a.num, e - a.exp);
        let sb = shl(b.num, e - b.exp);
        (sa, sb, e)
    }

    /// Exact quotient, when it exists in the dyadic ring.
    pub fn checked_div(&self, d: Dyadic) -> Option<Dyadic> {
        if d.num == 0 {
            return None;
        }
        let tz = d.num.trailing_zeros();
        let odd = d.num >> tz;
        if self.num % odd != 0 {
            return None;
        }
        // self / d = (self.num / odd) * 2^(d.exp - self.exp - tz)
        let q = self.num / odd;
        let shift = d.exp as i64 - self.exp as i64 - tz as i64;
        Some(if shift >= 0 { Dyadic::new(shl(q, shift as u32), 0) } else { Dyadic::new(q, (-shift) as u32) })
    }
}

fn shl(v: i128, s: u32) -> i128 {
    1i128.checked_shl(s).filter(|_| s < 127).and_then(|f| v.checked_mul(f)).expect("dyadic overflow")
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, o: Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::aligned(self, o);
        Dyadic::new(a.checked_add(b).expect("dyadic overflow"), e)
    }
}

impl AddAssign for Dyadic {
    fn add_assign(&mut self, o: Dyadic) {
        *self = *self + o;
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, o: Dyadic) -> Dyadic {
        self + (-o)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -self.num, exp: self.exp }
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    // Denominators are powers of two, so their exponents add.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: Dyadic) -> Dyadic {
        Dyadic::new(self.num.checked_mul(o.num).expect("dyadic overflow"), self.exp + o.exp)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Dyadic::aligned(*self, *other);
        a.cmp(&b)
    }
}

impl From<i64> for Dyadic {
    fn from(v: i64) -> Self {
        Dyadic::from_int(v)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1i128 << self.exp)
        }
    }
}

impl Scalar for Dyadic {
    fn zero() -> Self {
        Dyadic::ZERO
    }
    fn one() -> Self {
        Dyadic::ONE
    }
    fn is_zero(&self) -> bool {
        self.num == 0
    }
    fn conj(&self) -> Self {
        *self
    }
    fn from_dyadic(d: Dyadic) -> Self {
        d
    }
    fn log2den(&self) -> u32 {
        self.exp
    }
    fn signed_text(&self) -> (bool, String) {
        let a = self.abs();
        let text = if a == Dyadic::ONE { String::new() } else { a.to_string() };
        (self.is_negative(), text)
    }
}

fn unit_text(c: Dyadic, unit: &str) -> String {
    if c == Dyadic::ONE {
        unit.to_string()
    } else if c == -Dyadic::ONE {
        format!("-{unit}")
    } else {
        format!("{c}{unit}")
    }
}

/// Joins component terms such as `1/2`, `-i`, `q2` into `(1/2-i+q2)` when
/// more than one is present. Returns sign and magnitude like `signed_text`.
fn compound_text(parts: &[(Dyadic, &str)]) -> (bool, String) {
    let nz: Vec<&(Dyadic, &str)> = parts.iter().filter(|(c, _)| !c.is_zero()).collect();
    match nz.len() {
        0 => (false, "0".to_string()),
        1 => {
            let (c, u) = nz[0];
            let neg = c.is_negative();
            let a = c.abs();
            let s = if u.is_empty() {
                if a == Dyadic::ONE {
                    String::new()
                } else {
                    a.to_string()
                }
            } else {
                unit_text(a, u)
            };
            (neg, s)
        }
        _ => {
            let mut s = String::from("(");
            for (k, (c, u)) in nz.iter().enumerate() {
                let body = if u.is_empty() { c.to_string() } else { unit_text(*c, u) };
                if k > 0 && !c.is_negative() {
                    s.push('+');
                }
                s.push_str(&body);
            }
            s.push(')');
            (false, s)
        }
    }
}

/// Gaussian dyadic `re + i im`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Cx {
    pub re: Dyadic,
    pub im: Dyadic,
}

impl Cx {
    pub const I: Cx = Cx { re: Dyadic::ZERO, im: Dyadic::ONE };

    pub fn new(re: Dyadic, im: Dyadic) -> Self {
        Cx { re, im }
    }

    pub fn real(re: Dyadic) -> Self {
        Cx { re, im: Dyadic::ZERO }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm_sq(&self) -> Dyadic {
        self.re * self.re + self.im * self.im
    }

    /// Exact inverse, if it stays dyadic.
    pub fn inverse(&self) -> Option<Cx> {
        let n = self.norm_sq();
        Some(Cx { re: self.re.checked_div(n)?, im: (-self.im).checked_div(n)? })
    }
}

impl Add for Cx {
    type Output = Cx;
    fn add(self, o: Cx) -> Cx {
        Cx { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for Cx {
    type Output = Cx;
    fn sub(self, o: Cx) -> Cx {
        Cx { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Neg for Cx {
    type Output = Cx;
    fn neg(self) -> Cx {
        Cx { re: -self.re, im: -self.im }
    }
}

impl Mul for Cx {
    type Output = Cx;
    fn mul(self, o: Cx) -> Cx {
        Cx { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl From<Dyadic> for Cx {
    fn from(d: Dyadic) -> Self {
        Cx::real(d)
    }
}

impl fmt::Display for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, s) = self.signed_text();
        let s = if s.is_empty() { "1".to_string() } else { s };
        write!(f, "{}{}", if neg { "-" } else { "" }, s)
    }
}

impl Scalar for Cx {
    fn zero() -> Self {
        Cx::default()
    }
    fn one() -> Self {
        Cx::real(Dyadic::ONE)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn conj(&self) -> Self {
        Cx { re: self.re, im: -self.im }
    }
    fn from_dyadic(d: Dyadic) -> Self {
        Cx::real(d)
    }
    fn log2den(&self) -> u32 {
        self.re.log2den().max(self.im.log2den())
    }
    fn signed_text(&self) -> (bool, String) {
        compound_text(&[(self.re, ""), (self.im, "i")])
    }
}

/// Quaternion `w + x q1 + y q2 + z q3` with q1 q2 = q3 and every q_i² = −1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Quat {
    pub w: Dyadic,
    pub x: Dyadic,
    pub y: Dyadic,
    pub z: Dyadic,
}

impl Quat {
    pub fn new(w: Dyadic, x: Dyadic, y: Dyadic, z: Dyadic) -> Self {
        Quat { w, x, y, z }
    }

    pub fn real(w: Dyadic) -> Self {
        Quat { w, ..Quat::default() }
    }

    /// The unit `q_i` (0 is the real unit).
    pub fn unit(i: usize) -> Self {
        let mut c = [Dyadic::ZERO; 4];
        c[i] = Dyadic::ONE;
        Quat::from_components(c)
    }

    pub fn from_components(c: [Dyadic; 4]) -> Self {
        Quat { w: c[0], x: c[1], y: c[2], z: c[3] }
    }

    pub fn components(&self) -> [Dyadic; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// The complex number `w + x i`, valid when y and z vanish.
    pub fn from_cx(c: Cx) -> Self {
        Quat { w: c.re, x: c.im, ..Quat::default() }
    }

    pub fn to_cx(&self) -> Option<Cx> {
        (self.y.is_zero() && self.z.is_zero()).then_some(Cx::new(self.w, self.x))
    }

    pub fn norm_sq(&self) -> Dyadic {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Text with `i` in place of `q1`, for complex-valued entries.
    pub fn signed_text_as(&self, complex: bool) -> (bool, String) {
        if complex {
            compound_text(&[(self.w, ""), (self.x, "i")])
        } else {
            compound_text(&[(self.w, ""), (self.x, "q1"), (self.y, "q2"), (self.z, "q3")])
        }
    }
}

impl Add for Quat {
    type Output = Quat;
    fn add(self, o: Quat) -> Quat {
        Quat { w: self.w + o.w, x: self.x + o.x, y: self.y + o.y, z: self.z + o.z }
    }
}

impl Sub for Quat {
    type Output = Quat;
    fn sub(self, o: Quat) -> Quat {
        self + (-o)
    }
}

impl Neg for Quat {
    type Output = Quat;
    fn neg(self) -> Quat {
        Quat { w: -self.w, x: -self.x, y: -self.y, z: -self.z }
    }
}

impl Mul for Quat {
    type Output = Quat;
    fn mul(self, o: Quat) -> Quat {
        let (a, b) = (self, o);
        Quat {
            w: a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            x: a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            y: a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            z: a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        }
    }
}

impl From<Dyadic> for Quat {
    fn from(d: Dyadic) -> Self {
        Quat::real(d)
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (neg, s) = self.signed_text();
        let s = if s.is_empty() { "1".to_string() } else { s };
        write!(f, "{}{}", if neg { "-" } else { "" }, s)
    }
}

impl Scalar for Quat {
    fn zero() -> Self {
        Quat::default()
    }
    fn one() -> Self {
        Quat::real(Dyadic::ONE)
    }
    fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }
    fn conj(&self) -> Self {
        Quat { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }
    fn from_dyadic(d: Dyadic) -> Self {
        Quat::real(d)
    }
    fn log2den(&self) -> u32 {
        self.components().iter().map(|c| c.log2den()).max().unwrap_or(0)
    }
    fn signed_text(&self) -> (bool, String) {
        self.signed_text_as(false)
    }
}
