use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// One coordinate of a character, measured in turns (fractions of a full
/// rotation).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Turn {
    /// Exact `p/q` in lowest terms with `0 <= p/q < 1`: a torsion coordinate.
    Rational(Ratio<i64>),
    /// A decimal in `[0, 1)`, treated as non-torsion.
    Decimal(f64),
}

impl Turn {
    pub fn rational(p: i64, q: i64) -> Self {
        assert!(q > 0, "turn denominator must be positive");
        let p = p.rem_euclid(q);
        Turn::Rational(Ratio::new(p, q))
    }

    pub fn decimal(x: f64) -> Self {
        let mut r = x.rem_euclid(1.0);
        if r >= 1.0 {
            r = 0.0;
        }
        Turn::Decimal(r)
    }

    pub fn zero() -> Self {
        Turn::Rational(Ratio::new(0, 1))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Turn::Rational(r) => *r.numer() == 0,
            Turn::Decimal(x) => *x == 0.0,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Turn::Rational(r) => *r.numer() as f64 / *r.denom() as f64,
            Turn::Decimal(x) => *x,
        }
    }

    /// Circular distance to 0 in turns, in `[0, 1/2]`.
    pub fn circular_distance(&self) -> f64 {
        match self {
            Turn::Rational(r) => {
                let (p, q) = (*r.numer(), *r.denom());
                p.min(q - p) as f64 / q as f64
            }
            Turn::Decimal(x) => x.min(1.0 - x),
        }
    }

    /// The coordinate of the complex-conjugate character.
    pub fn mirrored(&self) -> Self {
        match self {
            Turn::Rational(r) => Turn::rational(-*r.numer(), *r.denom()),
            Turn::Decimal(x) => Turn::decimal(-x),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Character(format!("cannot parse turn `{s}`"));
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q <= 0 {
                return Err(Error::Character(format!("nonpositive denominator in `{s}`")));
            }
            Ok(Turn::rational(p, q))
        } else if let Ok(k) = s.parse::<i64>() {
            Ok(Turn::rational(k, 1))
        } else {
            let x: f64 = s.parse().map_err(|_| bad())?;
            if !x.is_finite() {
                return Err(bad());
            }
            Ok(Turn::decimal(x))
        }
    }
}

impl fmt::Display for Turn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Turn::Rational(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Turn::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Turn::Decimal(x) => write!(f, "{x:?}"),
        }
    }
}

/// `exp(2πi·p/q)` for `0 <= p < q`, exact at multiples of a quarter turn.
/// The angle is folded into `(-1/2, 1/2]` first so that `p/q` and `(q-p)/q`
/// give exact conjugates.
pub fn root_of_unity(p: i128, q: i128) -> Complex64 {
    debug_assert!(q > 0 && (0..q).contains(&p));
    if p == 0 {
        return Complex64::new(1.0, 0.0);
    }
    if 2 * p == q {
        return Complex64::new(-1.0, 0.0);
    }
    if 4 * p == q {
        return Complex64::new(0.0, 1.0);
    }
    if 4 * p == 3 * q {
        return Complex64::new(0.0, -1.0);
    }
    let folded = if 2 * p > q { p - q } else { p };
    unit_circle(folded as f64 / q as f64)
}

fn unit_circle(turn: f64) -> Complex64 {
    let (s, c) = (2.0 * PI * turn).sin_cos();
    Complex64::new(c, s)
}

fn fold_decimal(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r > 0.5 {
        r - 1.0
    } else {
        r
    }
}

/// A point of `Hom(H, S^1)`, one turn per generator of `H`.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    turns: Vec<Turn>,
}

impl Character {
    pub fn new(turns: Vec<Turn>) -> Result<Self> {
        for t in &turns {
            if let Turn::Decimal(x) = t {
                if !(0.0..1.0).contains(x) {
                    return Err(Error::Character(format!("decimal turn {x} outside [0,1)")));
                }
            }
        }
        Ok(Character { turns })
    }

    /// The trivial character φ₀.
    pub fn trivial(num_vars: usize) -> Self {
        Character { turns: vec![Turn::zero(); num_vars] }
    }

    /// Parses comma-separated turns such as `1/3,0` or `0.618,1/2`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Err(Error::Character("empty character".into()));
        }
        let turns = s.split(',').map(Turn::parse).collect::<Result<Vec<_>>>()?;
        Character::new(turns)
    }

    pub fn num_vars(&self) -> usize {
        self.turns.len()
    }

    pub fn turns(&self) -> &[Turn] {
        &self.turns
    }

    pub fn is_torsion(&self) -> bool {
        self.turns.iter().all(|t| matches!(t, Turn::Rational(_)))
    }

    pub fn is_trivial(&self) -> bool {
        self.turns.iter().all(Turn::is_zero)
    }

    /// Sup over coordinates of the circular turns distance to φ₀.
    pub fn distance_to_trivial(&self) -> f64 {
        self.turns.iter().map(Turn::circular_distance).fold(0.0, f64::max)
    }

    pub fn conjugate(&self) -> Self {
        Character { turns: self.turns.iter().map(Turn::mirrored).collect() }
    }

    /// Value of the monomial `t^e`. Rational coordinates are combined exactly
    /// before a single trigonometric call.
    pub fn monomial_value(&self, e: &[i64]) -> Complex64 {
        debug_assert_eq!(e.len(), self.turns.len());
        let mut num: i128 = 0;
        let mut den: i128 = 1;
        let mut decimal = 0.0f64;
        let mut has_decimal = false;
        for (&k, t) in e.iter().zip(&self.turns) {
            if k == 0 {
                continue;
            }
            match t {
                Turn::Rational(r) => {
                    let (p, q) = (*r.numer() as i128, *r.denom() as i128);
                    let l = den.lcm(&q);
                    num = (num * (l / den) + (k as i128 * p).rem_euclid(q) * (l / q)).rem_euclid(l);
                    den = l;
                }
                Turn::Decimal(x) => {
                    has_decimal = true;
                    decimal += fold_decimal(k as f64 * x);
                }
            }
        }
        if !has_decimal {
            return root_of_unity(num, den);
        }
        unit_circle(fold_decimal(num as f64 / den as f64 + decimal))
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.turns.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

fn canonical_cmp(a: &Ratio<i64>, b: &Ratio<i64>) -> Ordering {
    a.denom().cmp(b.denom()).then(a.numer().cmp(b.numer()))
}

/// All torsion characters whose coordinates have denominator at most
/// `max_order`, ordered coordinatewise by (denominator, numerator).
pub fn torsion_characters(num_vars: usize, max_order: u32) -> Result<Vec<Character>> {
    if max_order == 0 {
        return Err(Error::Argument("max torsion order must be at least 1".into()));
    }
    let mut coords: Vec<Ratio<i64>> = Vec::new();
    for q in 1..=max_order as i64 {
        for p in 0..q {
            if p.gcd(&q) == 1 {
                coords.push(Ratio::new(p, q));
            }
        }
    }
    coords.sort_by(canonical_cmp);
    let mut out = vec![Vec::<Turn>::new()];
    for _ in 0..num_vars {
        let mut next = Vec::with_capacity(out.len() * coords.len());
        for prefix in &out {
            for c in &coords {
                let mut v = prefix.clone();
                v.push(Turn::Rational(*c));
                next.push(v);
            }
        }
        out = next;
    }
    Ok(out.into_iter().map(|turns| Character { turns }).collect())
}
