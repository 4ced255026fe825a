use std::fmt;

/// Coefficient expressions.
#[derive(Debug, Clone, PartialEq)]
pub enum EntropicExpr {
    Num(f64),
    /// Unbounded supply, e.g. unlimited entanglement assistance.
    Infinity,
    /// An uninterpreted function of system names such as `Q(N)`.
    Symbol {
        name: String,
        args: Vec<String>,
    },
    Entropy {
        x: Vec<String>,
        given: Option<Vec<String>>,
        tag: Option<String>,
    },
    MutualInfo {
        x: Vec<String>,
        y: Vec<String>,
        given: Option<Vec<String>>,
        tag: Option<String>,
    },
    Neg(Box<EntropicExpr>),
    Add(Box<EntropicExpr>, Box<EntropicExpr>),
    Sub(Box<EntropicExpr>, Box<EntropicExpr>),
    Mul(Box<EntropicExpr>, Box<EntropicExpr>),
    Div(Box<EntropicExpr>, Box<EntropicExpr>),
}

impl EntropicExpr {
    fn precedence(&self) -> u8 {
        match self {
            EntropicExpr::Add(..) | EntropicExpr::Sub(..) => 1,
            EntropicExpr::Mul(..) | EntropicExpr::Div(..) => 2,
            EntropicExpr::Neg(_) => 3,
            EntropicExpr::Num(v) if v.is_sign_negative() => 3,
            _ => 4,
        }
    }

    fn is_atom(&self) -> bool {
        self.precedence() == 4
    }

    fn write_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_prec(f, 0)?;
            return write!(f, ")");
        }
        match self {
            EntropicExpr::Num(v) => write!(f, "{v}"),
            EntropicExpr::Infinity => write!(f, "inf"),
            EntropicExpr::Symbol { name, args } => write!(f, "{name}({})", args.join(",")),
            EntropicExpr::Entropy { x, given, tag } => {
                write!(f, "H({}", x.concat())?;
                if let Some(g) = given {
                    write!(f, "|{}", g.concat())?;
                }
                write!(f, ")")?;
                write_tag(f, tag)
            }
            EntropicExpr::MutualInfo { x, y, given, tag } => {
                write!(f, "I({};{}", x.concat(), y.concat())?;
                if let Some(g) = given {
                    write!(f, "|{}", g.concat())?;
                }
                write!(f, ")")?;
                write_tag(f, tag)
            }
            EntropicExpr::Neg(a) => {
                write!(f, "-")?;
                a.write_prec(f, 3)
            }
            EntropicExpr::Add(a, b) => {
                a.write_prec(f, 1)?;
                write!(f, " + ")?;
                b.write_prec(f, 2)
            }
            EntropicExpr::Sub(a, b) => {
                a.write_prec(f, 1)?;
                write!(f, " - ")?;
                b.write_prec(f, 2)
            }
            EntropicExpr::Mul(a, b) => {
                a.write_prec(f, 2)?;
                if b.is_atom() {
                    write!(f, " ")?;
                    b.write_prec(f, 4)
                } else {
                    write!(f, " * ")?;
                    b.write_prec(f, 3)
                }
            }
            EntropicExpr::Div(a, b) => {
                a.write_prec(f, 2)?;
                write!(f, " / ")?;
                b.write_prec(f, 3)
            }
        }
    }

    /// Form used in front of a resource: sums and negations are bracketed.
    pub(crate) fn write_coefficient(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            _ if self.precedence() != 2 && self.precedence() != 4 => {
                write!(f, "(")?;
                self.write_prec(f, 0)?;
                write!(f, ")")
            }
            _ => self.write_prec(f, 2),
        }
    }
}

fn write_tag(f: &mut fmt::Formatter<'_>, tag: &Option<String>) -> fmt::Result {
    match tag {
        Some(t) => write!(f, "_{t}"),
        None => Ok(()),
    }
}

impl fmt::Display for EntropicExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_prec(f, 0)
    }
}

/// A resource kind.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Resource {
    /// `[qq]`
    Ebit,
    /// `[q->q]`
    QubitChannel,
    /// `[c->c]`
    CbitChannel,
    /// `<N>`: many independent uses of a noisy channel.
    Noisy(String),
    /// `<N:rho_A>`: channel uses fed a fixed input state.
    Relative { channel: String, state: String },
    /// `<psi_A|B|R>`: copies of a shared state; the partition after `_` is
    /// carried as metadata.
    State { name: String, partition: String },
}

impl Resource {
    pub fn is_classical(&self) -> bool {
        matches!(self, Resource::CbitChannel)
    }
}

impl fmt::Display for Resource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resource::Ebit => write!(f, "[qq]"),
            Resource::QubitChannel => write!(f, "[q->q]"),
            Resource::CbitChannel => write!(f, "[c->c]"),
            Resource::Noisy(n) => write!(f, "<{n}>"),
            Resource::Relative { channel, state } => write!(f, "<{channel}:{state}>"),
            Resource::State { name, partition } => write!(f, "<{name}_{partition}>"),
        }
    }
}

/// `coeff resource`; a missing coefficient means 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Option<EntropicExpr>,
    pub resource: Resource,
}

impl Term {
    pub fn new(coeff: Option<EntropicExpr>, resource: Resource) -> Self {
        Self { coeff, resource }
    }

    /// Coefficient with the implicit 1 made explicit.
    pub fn coefficient(&self) -> EntropicExpr {
        self.coeff.clone().unwrap_or(EntropicExpr::Num(1.0))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = &self.coeff {
            c.write_coefficient(f)?;
            write!(f, " ")?;
        }
        write!(f, "{}", self.resource)
    }
}

/// `lhs >= rhs`: the left bundle asymptotically simulates the right one.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RIStatement {
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

fn write_side(f: &mut fmt::Formatter<'_>, side: &[Term]) -> fmt::Result {
    if side.is_empty() {
        return write!(f, "0");
    }
    for (i, t) in side.iter().enumerate() {
        if i > 0 {
            write!(f, " + ")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

impl fmt::Display for RIStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_side(f, &self.lhs)?;
        write!(f, " >= ")?;
        write_side(f, &self.rhs)
    }
}
