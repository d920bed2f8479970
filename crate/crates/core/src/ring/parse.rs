//! Recursive-descent parser for ring expressions.
//!
//! Grammar (whitespace ignored, `x` is left-associative direct product):
//!
//! ```text
//! expr := term ( 'x' term )*
//! term := 'Z' nat
//!       | 'GF' '(' nat ( '^' nat )? ')'
//!       | 'M' nat '(' expr ')'
//!       | 'LT' nat '(' expr ')'
//!       | 'UT' nat '(' expr ')'
//!       | 'Trunc' '(' expr ',' nat ')'
//! ```

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use super::{
    checked_pow_u128, is_prime, prime_power, FiniteRing, MatrixShape, RingError,
};

enum Ast {
    Z(usize),
    Gf { p: usize, k: usize },
    Matrix { n: usize, shape: MatrixShape, inner: Box<Ast> },
    Trunc { inner: Box<Ast>, k: usize },
    Product(Vec<Ast>),
}

impl Ast {
    fn size(&self) -> Option<u128> {
        match self {
            Ast::Z(n) => Some(*n as u128),
            Ast::Gf { p, k } => checked_pow_u128(*p as u128, *k),
            Ast::Matrix { n, shape, inner } => {
                let free = match shape {
                    MatrixShape::Full => n * n,
                    MatrixShape::Lower | MatrixShape::Upper => n * (n + 1) / 2,
                };
                checked_pow_u128(inner.size()?, free)
            }
            Ast::Trunc { inner, k } => checked_pow_u128(inner.size()?, *k),
            Ast::Product(factors) => {
                let mut total = 1u128;
                for f in factors {
                    total = total.checked_mul(f.size()?)?;
                }
                Some(total)
            }
        }
    }

    fn build(&self) -> FiniteRing {
        match self {
            Ast::Z(n) => FiniteRing::modular(*n),
            Ast::Gf { p, k } => FiniteRing::galois_field(*p, *k),
            Ast::Matrix { n, shape, inner } => {
                FiniteRing::matrix(inner.build(), *n, shape.clone())
            }
            Ast::Trunc { inner, k } => FiniteRing::trunc_poly(inner.build(), *k),
            Ast::Product(factors) => {
                FiniteRing::product(factors.iter().map(Ast::build).collect())
            }
        }
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> RingError {
        RingError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), RingError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.bytes[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<usize, RingError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        core::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<usize>()
            .map_err(|_| RingError::Parse {
                pos: start,
                msg: "number out of range".into(),
            })
    }

    fn expr(&mut self) -> Result<Ast, RingError> {
        let first = self.term()?;
        let mut factors = alloc::vec![first];
        while self.peek() == Some(b'x') {
            self.pos += 1;
            factors.push(self.term()?);
        }
        if factors.len() == 1 {
            Ok(factors.pop().unwrap())
        } else {
            // flatten nested products so AxBxC has one factor list
            let mut flat = Vec::new();
            for f in factors {
                match f {
                    Ast::Product(inner) => flat.extend(inner),
                    other => flat.push(other),
                }
            }
            Ok(Ast::Product(flat))
        }
    }

    fn term(&mut self) -> Result<Ast, RingError> {
        self.skip_ws();
        if self.eat_keyword("GF") {
            self.expect(b'(')?;
            let m = self.nat()?;
            let ast = if self.peek() == Some(b'^') {
                self.pos += 1;
                let k = self.nat()?;
                if !is_prime(m) {
                    return Err(RingError::Unsupported(format!(
                        "GF({m}^{k}): {m} is not prime"
                    )));
                }
                if k == 0 {
                    return Err(RingError::Unsupported("GF exponent must be positive".into()));
                }
                Ast::Gf { p: m, k }
            } else {
                match prime_power(m) {
                    Some((p, k)) => Ast::Gf { p, k },
                    None => {
                        return Err(RingError::Unsupported(format!(
                            "GF({m}): {m} is not a prime power"
                        )))
                    }
                }
            };
            self.expect(b')')?;
            Ok(ast)
        } else if self.eat_keyword("Trunc") {
            self.expect(b'(')?;
            let inner = self.expr()?;
            self.expect(b',')?;
            let k = self.nat()?;
            if k == 0 {
                return Err(RingError::Unsupported(
                    "Trunc degree must be positive".into(),
                ));
            }
            self.expect(b')')?;
            Ok(Ast::Trunc {
                inner: Box::new(inner),
                k,
            })
        } else if self.eat_keyword("LT") {
            self.matrix_term(MatrixShape::Lower)
        } else if self.eat_keyword("UT") {
            self.matrix_term(MatrixShape::Upper)
        } else if self.eat_keyword("M") {
            self.matrix_term(MatrixShape::Full)
        } else if self.eat_keyword("Z") {
            let n = self.nat()?;
            if n < 2 {
                return Err(RingError::Unsupported(format!(
                    "Z{n} has no identity distinct from zero"
                )));
            }
            Ok(Ast::Z(n))
        } else {
            Err(self.err("expected a ring term (Z, GF, M, LT, UT, Trunc)"))
        }
    }

    fn matrix_term(&mut self, shape: MatrixShape) -> Result<Ast, RingError> {
        let n = self.nat()?;
        if n == 0 {
            return Err(RingError::Unsupported("matrix degree must be positive".into()));
        }
        self.expect(b'(')?;
        let inner = self.expr()?;
        self.expect(b')')?;
        Ok(Ast::Matrix {
            n,
            shape,
            inner: Box::new(inner),
        })
    }
}

pub fn parse_ring_expr(spec: &str, cap: usize) -> Result<FiniteRing, RingError> {
    let mut parser = Parser {
        bytes: spec.as_bytes(),
        pos: 0,
    };
    let ast = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.err("unexpected trailing input"));
    }
    let size = ast.size().unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(RingError::CapExceeded { size, cap });
    }
    Ok(ast.build())
}

#[cfg(test)]
mod tests {
    use super::super::{make_ring, make_ring_with_cap, RingError};

    #[test]
    fn whitespace_and_normalization() {
        let r = make_ring("  Z4  x GF( 4 ) ").unwrap();
        assert_eq!(r.label(), "Z4xGF(2^2)");
        assert_eq!(r.size(), 16);
    }

    #[test]
    fn product_is_flattened_left_associative() {
        let r = make_ring("Z2xZ3xZ2").unwrap();
        assert_eq!(r.size(), 12);
        assert_eq!(r.label(), "Z2xZ3xZ2");
    }

    #[test]
    fn gf_six_rejected() {
        match make_ring("GF(6)") {
            Err(RingError::Unsupported(msg)) => assert!(msg.contains("prime power")),
            other => panic!("expected unsupported, got {other:?}"),
        }
    }

    #[test]
    fn gf_explicit_exponent() {
        let r = make_ring("GF(3^2)").unwrap();
        assert_eq!(r.size(), 9);
        assert!(make_ring("GF(4^2)").is_err());
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["", "M2(", "Z", "Q8", "Z4x", "Trunc(Z4)", "Z4)"] {
            assert!(make_ring(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn z1_rejected() {
        assert!(matches!(make_ring("Z1"), Err(RingError::Unsupported(_))));
    }

    #[test]
    fn cap_enforced() {
        match make_ring("M4(GF(4))") {
            Err(RingError::CapExceeded { size, cap }) => {
                assert_eq!(size, 4u128.pow(16));
                assert_eq!(cap, 65536);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
        assert!(make_ring_with_cap("Z100000", 1 << 20).is_ok());
        assert!(make_ring("M2(GF(16))").is_ok()); // exactly at the cap
    }

    #[test]
    fn nested_constructions() {
        let r = make_ring("LT2(GF(2))xTrunc(GF(2),2)").unwrap();
        assert_eq!(r.size(), 32);
        assert_eq!(r.label(), "LT2(GF(2))xTrunc(GF(2),2)");
    }
}
