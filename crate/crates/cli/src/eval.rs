//! Evaluation of parsed expressions against a configuration.

use std::fmt;

use qfa_core::laplace::circle;
use qfa_core::series::{green, smatrix, vee_exp};
use qfa_core::{divided_power, Element, FormalSeries, Renormaliser, Scalar, TContext, TensorElement};
use thiserror::Error;

use crate::config::Config;
use crate::parser::{Expr, Func, Product};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Core(#[from] qfa_core::Error),
    #[error("{0}")]
    Type(String),
}

fn type_err<T>(msg: impl Into<String>) -> Result<T, EvalError> {
    Err(EvalError::Type(msg.into()))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Scalar(Scalar),
    Element(Element),
    Tensor(TensorElement),
    Series(FormalSeries<Element>),
    ScalarSeries(FormalSeries<Scalar>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "a scalar",
            Value::Element(_) => "an element",
            Value::Tensor(_) => "a tensor",
            Value::Series(_) => "a series",
            Value::ScalarSeries(_) => "a scalar series",
        }
    }

    pub fn into_element(self) -> Result<Element, EvalError> {
        match self {
            Value::Scalar(c) => Ok(Element::scalar(c)),
            Value::Element(e) => Ok(e),
            v => type_err(format!("expected an element, got {}", v.kind())),
        }
    }

    fn scale(self, c: &Scalar) -> Value {
        match self {
            Value::Scalar(x) => Value::Scalar(x * c),
            Value::Element(e) => Value::Element(e.scale(c)),
            Value::Tensor(t) => Value::Tensor(t.scale(c)),
            Value::Series(s) => Value::Series(s.scale(c)),
            Value::ScalarSeries(s) => Value::ScalarSeries(s.scale(c)),
        }
    }

    fn add(self, other: Value) -> Result<Value, EvalError> {
        Ok(match (self, other) {
            (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(a + b),
            (a @ (Value::Scalar(_) | Value::Element(_)), b @ (Value::Scalar(_) | Value::Element(_))) => {
                Value::Element(a.into_element()? + b.into_element()?)
            }
            (Value::Tensor(mut a), Value::Tensor(b)) => {
                a.add_assign_tensor(&b);
                Value::Tensor(a)
            }
            (Value::Series(a), Value::Series(b)) if a.order() == b.order() => Value::Series(a.add(&b)),
            (Value::ScalarSeries(a), Value::ScalarSeries(b)) if a.order() == b.order() => {
                Value::ScalarSeries(a.add(&b))
            }
            (a, b) => return type_err(format!("cannot add {} and {}", a.kind(), b.kind())),
        })
    }
}

/// Canonical text: scalars and elements as terms, series one order per line.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(c) => write!(f, "{c}"),
            Value::Element(e) => write!(f, "{e}"),
            Value::Tensor(t) => write!(f, "{t}"),
            Value::Series(s) => write!(f, "{s}"),
            Value::ScalarSeries(s) => write!(f, "{s}"),
        }
    }
}

/// Everything an evaluation needs, built once per configuration.
pub struct Session {
    pub config: Config,
    /// Present when the pairing is symmetric.
    pub tctx: Option<TContext>,
    /// Present when a scheme is configured.
    pub renorm: Option<Renormaliser>,
    /// λ-order for S, expv and green.
    pub order: usize,
    /// Use T̄ instead of T in S and green.
    pub renormalised: bool,
}

impl Session {
    pub fn new(config: Config) -> Session {
        let tctx = config.pairing.is_symmetric().then(|| match &config.scheme {
            Some(z) => TContext::with_scheme(config.pairing.clone(), z.clone()),
            None => TContext::new(config.pairing.clone()),
        });
        let renorm = config
            .scheme
            .as_ref()
            .map(|z| Renormaliser::new(z.clone(), config.pairing.clone()));
        Session {
            config,
            tctx: tctx.map(|r| r.expect("symmetric pairing")),
            renorm,
            order: 4,
            renormalised: false,
        }
    }

    pub fn with_order(mut self, order: usize) -> Self {
        self.order = order;
        self
    }

    pub fn renormalised(mut self, on: bool) -> Self {
        self.renormalised = on;
        self
    }

    fn tctx(&self, what: &'static str) -> Result<&TContext, EvalError> {
        self.tctx
            .as_ref()
            .ok_or(EvalError::Core(qfa_core::Error::AsymmetricPairing(what)))
    }

    fn renorm(&self) -> Result<&Renormaliser, EvalError> {
        self.renorm.as_ref().ok_or(EvalError::Core(qfa_core::Error::MissingScheme))
    }

    fn generator(&self, k: usize) -> Result<usize, EvalError> {
        let dim = self.config.dimension;
        if k == 0 || k > dim {
            return Err(qfa_core::Error::GeneratorOutOfRange { index: k, dim }.into());
        }
        Ok(k)
    }

    /// A generator argument, written either `e3` or `3`.
    fn index_arg(&self, e: &Expr) -> Result<usize, EvalError> {
        match e {
            Expr::Gen(k) => self.generator(*k),
            Expr::Scalar(c) => self.generator(small_int(c)?),
            _ => type_err("expected a generator such as e1"),
        }
    }

    pub fn eval_str(&self, text: &str) -> Result<Value, crate::Error> {
        let expr = crate::parser::parse_expr(text)?;
        Ok(self.eval(&expr)?)
    }

    pub fn eval(&self, expr: &Expr) -> Result<Value, EvalError> {
        match expr {
            Expr::Scalar(c) => Ok(Value::Scalar(c.clone())),
            Expr::Gen(k) => Ok(Value::Element(Element::generator(self.generator(*k)?))),
            Expr::Neg(e) => Ok(self.eval(e)?.scale(&Scalar::from(-1))),
            Expr::Add(a, b) => self.eval(a)?.add(self.eval(b)?),
            Expr::Sub(a, b) => self.eval(a)?.add(self.eval(b)?.scale(&Scalar::from(-1))),
            Expr::ScalarMul(c, e) => Ok(self.eval(e)?.scale(c)),
            Expr::Prod(op, a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                if let (Value::Scalar(x), Value::Scalar(y)) = (&a, &b) {
                    return Ok(Value::Scalar(x * y));
                }
                let (u, v) = (a.into_element()?, b.into_element()?);
                Ok(Value::Element(match op {
                    Product::Vee => u.vee(&v),
                    Product::Circle => circle(&u, &v, &self.config.pairing),
                    Product::RenormCircle => self.renorm()?.circle(&u, &v),
                }))
            }
            Expr::Call(func, args) => self.call(*func, args),
        }
    }

    fn element(&self, e: &Expr) -> Result<Element, EvalError> {
        self.eval(e)?.into_element()
    }

    fn call(&self, func: Func, args: &[Expr]) -> Result<Value, EvalError> {
        let el = |k: usize| self.element(&args[k]);
        let v = match func {
            Func::T => Value::Element(self.tctx("the T-map")?.t_map(&el(0)?)),
            Func::TBar => Value::Element(self.tctx("the renormalised T-map")?.tbar_map(&el(0)?)?),
            Func::TScalar => Value::Scalar(self.tctx("the t-map")?.t_scalar(&el(0)?)),
            Func::TBarScalar => Value::Scalar(self.tctx("the renormalised t-map")?.tbar_scalar(&el(0)?)?),
            Func::Eps => match self.eval(&args[0])? {
                Value::Series(s) => Value::ScalarSeries(s.counit()),
                v => Value::Scalar(v.into_element()?.counit()),
            },
            Func::Antipode => Value::Element(el(0)?.antipode()),
            Func::Pair => Value::Scalar(self.config.pairing.pairing(&el(0)?, &el(1)?)),
            Func::Z => Value::Scalar(self.renorm()?.z_pairing(&el(0)?, &el(1)?)),
            Func::MPair => Value::Scalar(self.renorm()?.modified_pairing(&el(0)?, &el(1)?)),
            Func::S => {
                let what = if self.renormalised { "the renormalised S-matrix" } else { "the S-matrix" };
                Value::Series(smatrix(&el(0)?, self.tctx(what)?, self.order, self.renormalised)?)
            }
            Func::Derivation => Value::Element(el(1)?.derivation(self.index_arg(&args[0])?)),
            Func::Sigma => Value::Element(self.tctx("Σ")?.sigma(&el(0)?)),
            Func::ExpSigma => Value::Element(self.tctx("e^Σ")?.exp_sigma(&el(0)?)),
            Func::DividedPower => {
                let k = self.index_arg(&args[0])?;
                let Value::Scalar(n) = self.eval(&args[1])? else {
                    return type_err("dp expects a nonnegative integer power");
                };
                Value::Element(divided_power(k, small_int(&n)? as u32))
            }
            Func::ExpVee => Value::Series(vee_exp(&el(0)?, self.order)),
            Func::Green => {
                let (i, j) = (self.index_arg(&args[0])?, self.index_arg(&args[1])?);
                let ctx = self.tctx("the Green function")?;
                Value::ScalarSeries(green(i, j, &el(2)?, ctx, self.order, self.renormalised)?)
            }
            Func::Coproduct => Value::Tensor(el(0)?.coproduct()),
        };
        Ok(v)
    }
}

fn small_int(c: &Scalar) -> Result<usize, EvalError> {
    let text = c.to_string();
    match text.parse::<usize>() {
        Ok(n) if n <= 64 => Ok(n),
        _ => type_err(format!("expected a small nonnegative integer, got {text}")),
    }
}
