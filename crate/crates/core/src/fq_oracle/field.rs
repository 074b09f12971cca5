use crate::error::{Error, Result};

/// Conway polynomials, lowest coefficient first, without the leading 1.
fn conway(p: u32, degree: u32) -> Option<&'static [u32]> {
    Some(match (p, degree) {
        (2, 1) => &[1],
        (2, 2) => &[1, 1],
        (2, 3) => &[1, 1, 0],
        (2, 4) => &[1, 1, 0, 0],
        (2, 5) => &[1, 0, 1, 0, 0],
        (2, 6) => &[1, 1, 0, 1, 1, 0],
        (3, 1) => &[1],
        (3, 2) => &[2, 2],
        (3, 3) => &[1, 2, 0],
        (5, 1) => &[3],
        (5, 2) => &[2, 4],
        _ => return None,
    })
}

/// The finite field `F_q`, `q = p^degree <= 64`, with table arithmetic.
///
/// An element is a `u8` whose base-`p` digits are its coefficients in the basis
/// `1, x, x^2, ...`, where `x` is a root of the pinned Conway polynomial. `x` generates the
/// multiplicative group, and Conway compatibility makes subfield embeddings canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct Fq {
    p: u32,
    degree: u32,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
    exp: Vec<u8>,
    log: Vec<u32>,
}

impl std::fmt::Debug for Fq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

fn digits(a: usize, p: usize, d: usize) -> Vec<usize> {
    let mut v = Vec::with_capacity(d);
    let mut a = a;
    for _ in 0..d {
        v.push(a % p);
        a /= p;
    }
    v
}

fn undigits(v: &[usize], p: usize) -> usize {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Fq {
    /// `F_{p^degree}`; supported for `p` in {2, 3, 5} and `p^degree <= 64`.
    pub fn new(p: u32, degree: u32) -> Result<Self> {
        let poly = conway(p, degree).ok_or_else(|| {
            Error::Config(format!(
                "unsupported field F_{p}^{degree} (need p in {{2,3,5}} and q <= 64)"
            ))
        })?;
        let (pu, d) = (p as usize, degree as usize);
        let q = pu.pow(degree);
        let add: Vec<u8> = (0..q * q)
            .map(|ab| {
                let (a, b) = (digits(ab / q, pu, d), digits(ab % q, pu, d));
                let s: Vec<usize> = a.iter().zip(&b).map(|(x, y)| (x + y) % pu).collect();
                undigits(&s, pu) as u8
            })
            .collect();
        let neg: Vec<u8> = (0..q)
            .map(|a| {
                let s: Vec<usize> = digits(a, pu, d).iter().map(|x| (pu - x) % pu).collect();
                undigits(&s, pu) as u8
            })
            .collect();

        // powers of the root x of the Conway polynomial
        let times_x = |a: usize| -> usize {
            // shift up one degree, then use x^d = -(poly[0] + poly[1] x + ...)
            let mut c = vec![0usize];
            c.extend(digits(a, pu, d));
            let top = c.pop().expect("d >= 1");
            for (k, &pk) in poly.iter().enumerate() {
                c[k] = (c[k] + (pu - pk as usize) * top) % pu;
            }
            undigits(&c, pu)
        };
        let mut exp = Vec::with_capacity(q - 1);
        let mut log = vec![u32::MAX; q];
        let mut cur = 1usize;
        for k in 0..q - 1 {
            if log[cur] != u32::MAX {
                return Err(Error::Consistency(format!(
                    "Conway polynomial for F_{q} is not primitive"
                )));
            }
            log[cur] = k as u32;
            exp.push(cur as u8);
            cur = times_x(cur);
        }
        if cur != 1 {
            return Err(Error::Consistency(format!("x has wrong order in F_{q}")));
        }
        let mul: Vec<u8> = (0..q * q)
            .map(|ab| {
                let (a, b) = (ab / q, ab % q);
                if a == 0 || b == 0 {
                    0
                } else {
                    exp[(log[a] as usize + log[b] as usize) % (q - 1)]
                }
            })
            .collect();
        let inv: Vec<u8> = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    exp[(q - 1 - log[a] as usize) % (q - 1)]
                }
            })
            .collect();
        let frob: Vec<u8> = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    exp[(log[a] as usize * pu) % (q - 1)]
                }
            })
            .collect();
        Ok(Fq {
            p,
            degree,
            q,
            add,
            mul,
            neg,
            inv,
            frob,
            exp,
            log,
        })
    }

    /// `F_q` from the field size.
    pub fn with_order(q: usize) -> Result<Self> {
        for p in [2u32, 3, 5] {
            let mut d = 1;
            let mut pp = p as usize;
            while pp < q {
                pp *= p as usize;
                d += 1;
            }
            if pp == q {
                return Fq::new(p, d);
            }
        }
        Err(Error::Config(format!(
            "q = {q} is not a power of 2, 3 or 5"
        )))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `0` maps to `0`.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// `a^p`.
    #[inline]
    pub fn frob(&self, a: u8) -> u8 {
        self.frob[a as usize]
    }

    /// The generator of the multiplicative group.
    pub fn primitive(&self) -> u8 {
        self.exp[1 % (self.q - 1)]
    }

    /// `x^k` for the primitive element `x`.
    pub fn pow_primitive(&self, k: usize) -> u8 {
        self.exp[k % (self.q - 1)]
    }

    /// Discrete logarithm of a nonzero element.
    pub fn log(&self, a: u8) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// A basis of `F_q` over `F_p`.
    pub fn prime_basis(&self) -> Vec<u8> {
        (0..self.degree).map(|k| (self.p as usize).pow(k) as u8).collect()
    }

    /// Elements fixed by `a -> a^p`.
    pub fn is_prime_field_element(&self, a: u8) -> bool {
        self.frob(a) == a
    }

    /// The element `c * 1` for an integer `c`.
    pub fn from_int(&self, c: i64) -> u8 {
        c.rem_euclid(self.p as i64) as u8
    }

    /// Table sending each element of `self` to its image in `big`, which must contain `self`.
    pub fn embedding_into(&self, big: &Fq) -> Result<Vec<u8>> {
        if big.p != self.p || !big.degree.is_multiple_of(self.degree) {
            return Err(Error::Config(format!(
                "F_{} is not a subfield of F_{}",
                self.q, big.q
            )));
        }
        let step = (big.q - 1) / (self.q - 1);
        Ok((0..self.q)
            .map(|a| match self.log(a as u8) {
                None => 0,
                Some(k) => big.exp[(k as usize * step) % (big.q - 1)],
            })
            .collect())
    }
}
