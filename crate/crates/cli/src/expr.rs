//! Tangle expressions.
//!
//! ```text
//! expr   := term (";" term)*
//! term   := factor ("|" factor)*
//! factor := "cup(" int ")" | "cap(" int ")" | "x+(" int "," int ")"
//!         | "x-(" int "," int ")" | "id[" ints "]"
//!         | "trefoil" | "hopf" | "unknot" | "(" expr ")"
//! ```
//!
//! `;` stacks bottom to top, `|` places side by side and binds tighter.

use std::fmt;

use thiserror::Error;

use tangle_core::diagram::{hopf_link, trace_components, trefoil, unknot, validate, AmbientDim, Diagram, DiagramError, EventKind, Label, ObjectWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Cup,
    Cap,
    CrossPos,
    CrossNeg,
}

impl GenKind {
    fn name(self) -> &'static str {
        match self {
            GenKind::Cup => "cup",
            GenKind::Cap => "cap",
            GenKind::CrossPos => "x+",
            GenKind::CrossNeg => "x-",
        }
    }

    fn arity(self) -> usize {
        match self {
            GenKind::Cup | GenKind::Cap => 1,
            GenKind::CrossPos | GenKind::CrossNeg => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Unknot,
    Hopf,
    Trefoil,
}

impl Builtin {
    fn name(self) -> &'static str {
        match self {
            Builtin::Unknot => "unknot",
            Builtin::Hopf => "hopf",
            Builtin::Trefoil => "trefoil",
        }
    }

    fn components(self) -> usize {
        match self {
            Builtin::Unknot | Builtin::Trefoil => 1,
            Builtin::Hopf => 2,
        }
    }

    fn crossings(self) -> usize {
        match self {
            Builtin::Unknot => 0,
            Builtin::Hopf => 2,
            Builtin::Trefoil => 3,
        }
    }

    /// The builtin diagram, checked against its expected shape.
    pub fn diagram(self) -> Result<Diagram, BuildError> {
        let d = match self {
            Builtin::Unknot => unknot(),
            Builtin::Hopf => hopf_link(),
            Builtin::Trefoil => trefoil(),
        };
        let comps = trace_components(&d);
        let ok = validate(&d, d.dim()).is_valid()
            && d.is_closed()
            && comps.len() == self.components()
            && comps.iter().all(|c| c.closed)
            && d.num_crossings() == self.crossings();
        if ok {
            Ok(d)
        } else {
            Err(BuildError::Builtin(self.name()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Gen(GenKind, Vec<Label>),
    Seq(Box<Expr>, Box<Expr>),
    Par(Box<Expr>, Box<Expr>),
    IdWord(Vec<Label>),
    Named(Builtin),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("builtin `{0}` failed its self-check")]
    Builtin(&'static str),
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            return Ok(());
        }
        match self.peek() {
            Some(found) => self.error(format!("expected '{c}', found '{found}'")),
            None => self.error(format!("expected '{c}', found end of input")),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.term()?;
        while self.eat(';') {
            e = Expr::Seq(Box::new(e), Box::new(self.term()?));
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.factor()?;
        while self.eat('|') {
            e = Expr::Par(Box::new(e), Box::new(self.factor()?));
        }
        Ok(e)
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '+' || *c == '-')
        {
            // `x+`/`x-` are names, but a sign never starts one
            if matches!(self.chars[self.pos], '+' | '-') && !(self.pos == start + 1 && self.chars[start] == 'x') {
                break;
            }
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int(&mut self) -> Result<Label, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-' | '+')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        match text.parse() {
            Ok(n) => Ok(n),
            Err(_) => {
                self.pos = start;
                match self.chars.get(start) {
                    Some(c) => self.error(format!("expected an integer, found '{c}'")),
                    None => self.error("expected an integer, found end of input"),
                }
            }
        }
    }

    fn args(&mut self, open: char, close: char) -> Result<Vec<Label>, ParseError> {
        self.expect(open)?;
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat('(') {
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        let start = {
            self.skip_ws();
            self.pos
        };
        let name = self.word();
        let kind = match name.as_str() {
            "cup" => GenKind::Cup,
            "cap" => GenKind::Cap,
            "x+" => GenKind::CrossPos,
            "x-" => GenKind::CrossNeg,
            "id" => return Ok(Expr::IdWord(self.args('[', ']')?)),
            "unknot" => return Ok(Expr::Named(Builtin::Unknot)),
            "hopf" => return Ok(Expr::Named(Builtin::Hopf)),
            "trefoil" => return Ok(Expr::Named(Builtin::Trefoil)),
            "" => {
                return match self.peek() {
                    Some(c) => self.error(format!("unexpected '{c}'")),
                    None => self.error("unexpected end of input"),
                }
            }
            other => {
                self.pos = start;
                return self.error(format!("unknown generator `{other}`"));
            }
        };
        let args = self.args('(', ')')?;
        if args.len() != kind.arity() {
            self.pos = start;
            return self.error(format!(
                "`{}` takes {} argument{}, found {}",
                kind.name(),
                kind.arity(),
                if kind.arity() == 1 { "" } else { "s" },
                args.len()
            ));
        }
        Ok(Expr::Gen(kind, args))
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let e = p.expr()?;
    match p.peek() {
        None => Ok(e),
        Some(c) => p.error(format!("unexpected '{c}'")),
    }
}

fn join(labels: &[Label]) -> String {
    labels.iter().map(Label::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen(kind, args) => write!(f, "{}({})", kind.name(), join(args)),
            Expr::IdWord(w) => write!(f, "id[{}]", join(w)),
            Expr::Named(b) => f.write_str(b.name()),
            Expr::Seq(a, b) => match **b {
                Expr::Seq(..) => write!(f, "{a} ; ({b})"),
                _ => write!(f, "{a} ; {b}"),
            },
            Expr::Par(a, b) => {
                match **a {
                    Expr::Seq(..) => write!(f, "({a})")?,
                    _ => write!(f, "{a}")?,
                }
                match **b {
                    Expr::Seq(..) | Expr::Par(..) => write!(f, " | ({b})"),
                    _ => write!(f, " | {b}"),
                }
            }
        }
    }
}

impl Expr {
    /// The diagram in the smallest dimension holding every generator.
    pub fn to_diagram(&self) -> Result<Diagram, BuildError> {
        Ok(match self {
            Expr::Gen(kind, args) => {
                let (ek, dim) = match (kind, args.as_slice()) {
                    (GenKind::Cup, [k]) => (EventKind::Cup(*k), AmbientDim::Planar),
                    (GenKind::Cap, [k]) => (EventKind::Cap(*k), AmbientDim::Planar),
                    (GenKind::CrossPos, [a, b]) => (EventKind::CrossPos(*a, *b), AmbientDim::Braided),
                    (GenKind::CrossNeg, [a, b]) => (EventKind::CrossNeg(*a, *b), AmbientDim::Braided),
                    _ => unreachable!("arity is checked by the parser"),
                };
                Diagram::elementary(ek, dim)?
            }
            Expr::IdWord(w) => Diagram::identity(AmbientDim::Planar, ObjectWord(w.clone())),
            Expr::Named(b) => b.diagram()?,
            Expr::Seq(a, b) => a.to_diagram()?.compose(&b.to_diagram()?)?,
            Expr::Par(a, b) => a.to_diagram()?.tensor(&b.to_diagram()?),
        })
    }
}
