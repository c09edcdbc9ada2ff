//! Plain-text expressions for algebra elements and forms.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*' unary)*
//! unary := '-' unary | power
//! power := atom ('^' ['-'] int)?
//! atom  := int ['/' int] | 'q' | 'i' | 'x' | 'qint(' ['-'] int ')'
//!        | 'u[' i '][' j ']' | 'z[' i ']' | 'zs[' i ']' | 'p[' i '][' j ']'
//!        | ('star' | 'del' | 'delbar') '(' expr ')' | 'wedge(' expr ',' expr ')' | '(' expr ')'
//! ```
//! `*` between forms is the wedge product.

use std::fmt;

use crate::calculus::{del, delbar, form_star, wedge_forms, Bidegree, CalculusParams, Form, FormElement};
use crate::qalgebra::AlgebraElement;
use crate::scalars::{qint, Scalar};
use crate::Error;

/// A parsed expression in normal form.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Algebra(AlgebraElement),
    Form(Form),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Algebra(a) => write!(f, "{a}"),
            Expr::Form(w) => write!(f, "{w}"),
        }
    }
}

/// Parses `src` and brings it to normal form; wedge products use `params`.
pub fn parse(src: &str, params: &CalculusParams) -> Result<Expr, Error> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, params };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(match v {
        Value::Scalar(c) => Expr::Algebra(AlgebraElement::scalar(c)),
        Value::Form(w) => match function_part(&w) {
            Some(a) => Expr::Algebra(a),
            None => Expr::Form(w),
        },
    })
}

/// Parses an expression that must be a function.
pub fn parse_algebra(src: &str) -> Result<AlgebraElement, Error> {
    match parse(src, &CalculusParams::plus())? {
        Expr::Algebra(a) => Ok(a),
        Expr::Form(w) => Err(Error::Parse { pos: 0, msg: format!("expected a function, got the form {w}") }),
    }
}

#[derive(Clone)]
enum Value {
    Scalar(Scalar),
    Form(Form),
}

/// The function a form represents, if it has no part of positive degree.
fn function_part(w: &Form) -> Option<AlgebraElement> {
    w.parts().all(|p| p.bidegree() == Bidegree::ZERO || p.is_zero()).then(|| w.part(Bidegree::ZERO).comp(0).clone())
}

fn into_form(v: Value) -> Form {
    match v {
        Value::Scalar(c) => FormElement::function(AlgebraElement::scalar(c)).into(),
        Value::Form(w) => w,
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    params: &'a CalculusParams,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| Error::Parse { pos: start, msg: format!("integer {text} out of range") })
    }

    fn signed_int(&mut self) -> Result<i64, Error> {
        let neg = self.eat(b'-');
        let n = self.int()?;
        Ok(if neg { -n } else { n })
    }

    fn index(&mut self) -> Result<u8, Error> {
        self.expect(b'[')?;
        let at = self.pos;
        let n = self.int()?;
        self.expect(b']')?;
        if !(1..=3).contains(&n) {
            return Err(Error::Parse { pos: at, msg: format!("index {n} outside 1..3") });
        }
        Ok(n as u8)
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn expr(&mut self) -> Result<Value, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = add(acc, rhs);
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = add(acc, neg(rhs));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value, Error> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            let rhs = self.unary()?;
            acc = self.mul(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Value, Error> {
        if self.eat(b'-') {
            Ok(neg(self.unary()?))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Value, Error> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = self.pos;
        let n = self.signed_int()?;
        let err = |msg: String| Error::Parse { pos: at, msg };
        let n32 = i32::try_from(n).map_err(|_| err(format!("exponent {n} out of range")))?;
        match base {
            Value::Scalar(c) => {
                let c = if n32 < 0 { c.inverse().ok_or_else(|| err(format!("{c} is not invertible")))? } else { c };
                Ok(Value::Scalar(c.pow(n32.unsigned_abs())))
            }
            Value::Form(w) => {
                let a = function_part(&w).ok_or_else(|| err("only functions can be raised to powers".into()))?;
                if n32 < 0 {
                    return Err(err("negative powers of algebra elements are undefined".into()));
                }
                Ok(Value::Form(FormElement::function(a.pow(n32 as u32)).into()))
            }
        }
    }

    fn mul(&self, a: Value, b: Value) -> Value {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
            (Value::Scalar(c), Value::Form(w)) | (Value::Form(w), Value::Scalar(c)) => Value::Form(w.scale(&c)),
            (Value::Form(v), Value::Form(w)) => Value::Form(wedge_forms(&v, &w, self.params)),
        }
    }

    fn call(&mut self) -> Result<Value, Error> {
        self.expect(b'(')?;
        let v = self.expr()?;
        self.expect(b')')?;
        Ok(v)
    }

    fn function_arg(&mut self, name: &str) -> Result<AlgebraElement, Error> {
        let at = self.pos;
        let w = into_form(self.call()?);
        function_part(&w).ok_or(Error::Parse { pos: at, msg: format!("{name} is defined on functions only") })
    }

    fn atom(&mut self) -> Result<Value, Error> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        if c.is_ascii_digit() {
            let n = self.int()?;
            // a rational literal has no spaces around its slash
            if self.src.get(self.pos) == Some(&b'/') && self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
                let d = self.int()?;
                if d == 0 {
                    return Err(Error::Parse { pos: start, msg: "zero denominator".into() });
                }
                return Ok(Value::Scalar(Scalar::ratio(n, d)));
            }
            return Ok(Value::Scalar(Scalar::from_int(n)));
        }
        if c == b'(' {
            return self.call();
        }
        if !c.is_ascii_alphabetic() {
            return Err(self.error(format!("unexpected '{}'", c as char)));
        }
        let name = self.ident();
        let alg = |a: AlgebraElement| Value::Form(FormElement::function(a).into());
        Ok(match name.as_str() {
            "q" => Value::Scalar(Scalar::q_pow(1)),
            "i" => Value::Scalar(Scalar::i()),
            "x" => alg(AlgebraElement::x()),
            "u" => {
                let i = self.index()?;
                alg(AlgebraElement::u(i, self.index()?))
            }
            "p" => {
                let i = self.index()?;
                alg(AlgebraElement::p(i, self.index()?))
            }
            "z" => alg(AlgebraElement::z(self.index()?)),
            "zs" => alg(AlgebraElement::zs(self.index()?)),
            "qint" => {
                self.expect(b'(')?;
                let n = self.signed_int()?;
                self.expect(b')')?;
                Value::Scalar(qint(n))
            }
            "star" => match self.call()? {
                Value::Scalar(c) => Value::Scalar(c.conj()),
                Value::Form(w) => Value::Form(w.map(form_star)),
            },
            "del" => Value::Form(del(&self.function_arg("del")?).into()),
            "delbar" => Value::Form(delbar(&self.function_arg("delbar")?).into()),
            "wedge" => {
                self.expect(b'(')?;
                let a = into_form(self.expr()?);
                self.expect(b',')?;
                let b = into_form(self.expr()?);
                self.expect(b')')?;
                Value::Form(wedge_forms(&a, &b, self.params))
            }
            _ => return Err(Error::Parse { pos: start, msg: format!("unknown identifier {name}") }),
        })
    }
}

fn add(a: Value, b: Value) -> Value {
    match (a, b) {
        (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
        (a, b) => Value::Form(&into_form(a) + &into_form(b)),
    }
}

fn neg(a: Value) -> Value {
    match a {
        Value::Scalar(c) => Value::Scalar(-c),
        Value::Form(w) => Value::Form(-&w),
    }
}
