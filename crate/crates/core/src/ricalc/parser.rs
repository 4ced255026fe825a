use crate::ricalc::lexer::{tokenize, ParseError, Tok, Token};
use crate::ricalc::{EntropicExpr, RIStatement, Term};

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    end: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&'a Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.offset)
    }

    fn err<T>(&self, msg: impl Into<String>) -> PResult<T> {
        Err(ParseError::new(self.offset(), msg))
    }

    fn bump(&mut self) -> Option<&'a Tok> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: &Tok, what: &str) -> PResult<()> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn statement(&mut self) -> PResult<RIStatement> {
        if self.toks.is_empty() {
            return Err(ParseError::new(0, "empty statement"));
        }
        let lhs = self.side()?;
        self.expect(&Tok::Ge, "`>=`")?;
        let rhs = self.side()?;
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(RIStatement { lhs, rhs })
    }

    fn side(&mut self) -> PResult<Vec<Term>> {
        if self.peek() == Some(&Tok::Number(0.0)) && matches!(self.peek_at(1), None | Some(Tok::Ge)) {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut terms = vec![self.term()?];
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(terms)
    }

    fn term(&mut self) -> PResult<Term> {
        let coeff = match self.peek() {
            Some(Tok::Res(_)) => None,
            Some(_) => Some(self.coefficient()?),
            None => return self.err("expected a term"),
        };
        match self.bump() {
            Some(Tok::Res(r)) => Ok(Term::new(coeff, r.clone())),
            _ => {
                self.pos -= 1;
                self.err("expected a resource such as `[qq]`, `[q->q]` or `<...>`")
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Number(_) | Tok::Infinity | Tok::Ident(_) | Tok::LParen))
    }

    fn coefficient(&mut self) -> PResult<EntropicExpr> {
        if !self.starts_factor() && self.peek() != Some(&Tok::Minus) {
            return self.err("expected a coefficient or resource");
        }
        let first = self.unary()?;
        self.mul_tail(first)
    }

    fn mul_tail(&mut self, mut acc: EntropicExpr) -> PResult<EntropicExpr> {
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = EntropicExpr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    acc = EntropicExpr::Div(Box::new(acc), Box::new(self.unary()?));
                }
                _ if self.starts_factor() => {
                    acc = EntropicExpr::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn expr(&mut self) -> PResult<EntropicExpr> {
        let first = self.unary()?;
        let mut acc = self.mul_tail(first)?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let u = self.unary()?;
                    acc = EntropicExpr::Add(Box::new(acc), Box::new(self.mul_tail(u)?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let u = self.unary()?;
                    acc = EntropicExpr::Sub(Box::new(acc), Box::new(self.mul_tail(u)?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> PResult<EntropicExpr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            if let Some(Tok::Number(v)) = self.peek() {
                self.pos += 1;
                return Ok(EntropicExpr::Num(-v));
            }
            return Ok(EntropicExpr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> PResult<EntropicExpr> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Number(v)) => Ok(EntropicExpr::Num(*v)),
            Some(Tok::Infinity) => Ok(EntropicExpr::Infinity),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                if self.peek() != Some(&Tok::LParen) {
                    return Err(ParseError::new(at, format!("unexpected identifier `{name}`")));
                }
                self.pos += 1;
                match name.as_str() {
                    "H" => self.entropy(),
                    "I" => self.mutual_info(),
                    _ => self.symbol(name),
                }
            }
            Some(_) => Err(ParseError::new(at, "expected a number, entropic quantity or `(`")),
            None => Err(ParseError::new(at, "unexpected end of input")),
        }
    }

    fn labels(&mut self) -> PResult<Vec<String>> {
        let mut out = Vec::new();
        loop {
            let at = self.offset();
            match self.peek() {
                Some(Tok::Ident(s)) => {
                    self.pos += 1;
                    out.extend(split_labels(s, at)?);
                }
                _ if out.is_empty() => return self.err("expected system labels"),
                _ => return Ok(out),
            }
            if self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
            }
        }
    }

    fn given(&mut self) -> PResult<Option<Vec<String>>> {
        if self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            Ok(Some(self.labels()?))
        } else {
            Ok(None)
        }
    }

    fn close_and_tag(&mut self) -> PResult<Option<String>> {
        self.expect(&Tok::RParen, "`)`")?;
        if let Some(Tok::Ident(s)) = self.peek() {
            if let Some(tag) = s.strip_prefix('_') {
                if tag.is_empty() {
                    return self.err("empty state tag");
                }
                self.pos += 1;
                return Ok(Some(tag.to_string()));
            }
        }
        Ok(None)
    }

    fn entropy(&mut self) -> PResult<EntropicExpr> {
        let x = self.labels()?;
        let given = self.given()?;
        let tag = self.close_and_tag()?;
        Ok(EntropicExpr::Entropy { x, given, tag })
    }

    fn mutual_info(&mut self) -> PResult<EntropicExpr> {
        let x = self.labels()?;
        self.expect(&Tok::Semi, "`;`")?;
        let y = self.labels()?;
        let given = self.given()?;
        let tag = self.close_and_tag()?;
        Ok(EntropicExpr::MutualInfo { x, y, given, tag })
    }

    fn symbol(&mut self, name: &str) -> PResult<EntropicExpr> {
        let mut args = Vec::new();
        loop {
            let at = self.offset();
            match self.bump() {
                Some(Tok::Ident(a)) if !a.starts_with('_') => args.push(a.clone()),
                _ => return Err(ParseError::new(at, "expected an argument name")),
            }
            match self.bump() {
                Some(Tok::Comma) => continue,
                Some(Tok::RParen) => break,
                _ => {
                    self.pos -= 1;
                    return self.err("expected `,` or `)`");
                }
            }
        }
        Ok(EntropicExpr::Symbol { name: name.to_string(), args })
    }
}

/// `RA` -> `[R, A]`, `A1B2'` -> `[A1, B2']`.
fn split_labels(s: &str, offset: usize) -> PResult<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for c in s.chars() {
        if c.is_ascii_uppercase() {
            out.push(c.to_string());
        } else if (c.is_ascii_digit() || c == '\'') && !out.is_empty() {
            out.last_mut().expect("nonempty").push(c);
        } else {
            return Err(ParseError::new(offset, format!("invalid system label in `{s}`")));
        }
    }
    Ok(out)
}

/// Parses one resource inequality.
pub fn parse(text: &str) -> Result<RIStatement, ParseError> {
    let toks = tokenize(text)?;
    Parser { toks: &toks, pos: 0, end: text.len() }.statement()
}

/// Parses a bare coefficient expression.
pub fn parse_expr(text: &str) -> Result<EntropicExpr, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks: &toks, pos: 0, end: text.len() };
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

/// One statement of an RI file.
#[derive(Debug, Clone, PartialEq)]
pub struct RiLine {
    /// 1-based line number.
    pub line: usize,
    pub text: String,
    pub parsed: Result<RIStatement, ParseError>,
}

/// One statement per line; `#` starts a comment, blank lines are skipped.
pub fn parse_file(text: &str) -> Vec<RiLine> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let body = raw.split('#').next().unwrap_or("").trim_end();
            if body.trim().is_empty() {
                return None;
            }
            Some(RiLine { line: i + 1, text: body.to_string(), parsed: parse(body) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ricalc::Resource;

    fn mi(x: &str, y: &str) -> EntropicExpr {
        EntropicExpr::MutualInfo { x: vec![x.into()], y: vec![y.into()], given: None, tag: None }
    }

    #[test]
    fn schumacher() {
        let ri = parse("H(B) [q->q] >= <rho_B>").unwrap();
        assert_eq!(ri.lhs.len(), 1);
        assert_eq!(ri.lhs[0].coeff, Some(EntropicExpr::Entropy { x: vec!["B".into()], given: None, tag: None }));
        assert_eq!(ri.lhs[0].resource, Resource::QubitChannel);
        assert_eq!(ri.rhs[0].resource, Resource::State { name: "rho".into(), partition: "B".into() });
    }

    #[test]
    fn reverse_shannon() {
        let ri = parse("0.5 I(R;B) [q->q] + 0.5 I(E;B) [qq] >= <N:rho_A>").unwrap();
        assert_eq!(ri.lhs[0].coeff, Some(EntropicExpr::Mul(Box::new(EntropicExpr::Num(0.5)), Box::new(mi("R", "B")))));
        assert_eq!(ri.lhs[1].resource, Resource::Ebit);
        assert_eq!(ri.rhs[0].resource, Resource::Relative { channel: "N".into(), state: "rho_A".into() });
    }

    #[test]
    fn multi_label_sets_and_tags() {
        let ri = parse("I(RA;C|E)_phi [q->q] >= 0").unwrap();
        assert_eq!(
            ri.lhs[0].coeff,
            Some(EntropicExpr::MutualInfo {
                x: vec!["R".into(), "A".into()],
                y: vec!["C".into()],
                given: Some(vec!["E".into()]),
                tag: Some("phi".into())
            })
        );
        assert!(ri.rhs.is_empty());
        assert_eq!(ri.to_string(), "I(RA;C|E)_phi [q->q] >= 0");
    }

    #[test]
    fn empty_input_errors_at_zero() {
        assert_eq!(parse("").unwrap_err().offset, 0);
        assert_eq!(parse("   ").unwrap_err().offset, 0);
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse("H(A [qq] >= 0").unwrap_err().offset, 4);
        assert_eq!(parse("H(A) >= [qq]").unwrap_err().offset, 5);
        assert_eq!(parse("[qq] >= ").unwrap_err().offset, 8);
        assert_eq!(parse("H(a) [qq] >= 0").unwrap_err().offset, 2);
        assert_eq!(parse("[qq] [qq] >= 0").unwrap_err().offset, 5);
        assert_eq!(parse("H(A) [qq] >= 0 0").unwrap_err().offset, 16);
    }

    #[test]
    fn parenthesized_coefficients() {
        let ri = parse("(H(A) - 0.5 I(A;B)) [qq] >= (1/2) [q->q]").unwrap();
        assert!(matches!(ri.lhs[0].coeff, Some(EntropicExpr::Sub(..))));
        assert!(matches!(ri.rhs[0].coeff, Some(EntropicExpr::Div(..))));
        assert_eq!(parse(&ri.to_string()).unwrap(), ri);
    }

    #[test]
    fn file_with_comments() {
        let lines = parse_file("# header\n\n[qq] >= 0  # trailing\nbogus\n");
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].line, 3);
        assert!(lines[0].parsed.is_ok());
        assert!(lines[1].parsed.is_err());
    }

    #[test]
    fn expression_parser() {
        let e = parse_expr("0.5 I(A;R)").unwrap();
        assert_eq!(e.to_string(), "0.5 I(A;R)");
        assert!(parse_expr("").is_err());
        assert!(parse_expr("1 +").is_err());
    }
}
