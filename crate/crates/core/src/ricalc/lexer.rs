use thiserror::Error;

use crate::ricalc::Resource;

/// A syntax error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        Self { offset, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Number(f64),
    Ident(String),
    Infinity,
    LParen,
    RParen,
    Pipe,
    Semi,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Ge,
    Res(Resource),
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub offset: usize,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        let single = match ch {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '|' => Some(Tok::Pipe),
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' | '×' | '·' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '≥' => Some(Tok::Ge),
            '∞' => Some(Tok::Infinity),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            out.push(Token { tok, offset: i });
            continue;
        }
        match ch {
            '>' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '=')) => {
                        chars.next();
                        out.push(Token { tok: Tok::Ge, offset: i });
                    }
                    _ => return Err(ParseError::new(i, "expected `>=`")),
                }
            }
            '[' => {
                chars.next();
                let mut body = String::new();
                let mut closed = false;
                for (_, c) in chars.by_ref() {
                    if c == ']' {
                        closed = true;
                        break;
                    }
                    if !c.is_whitespace() {
                        body.push(c);
                    }
                }
                if !closed {
                    return Err(ParseError::new(i, "unterminated `[` resource"));
                }
                let res = match body.as_str() {
                    "qq" => Resource::Ebit,
                    "q->q" | "q→q" => Resource::QubitChannel,
                    "c->c" | "c→c" => Resource::CbitChannel,
                    other => return Err(ParseError::new(i, format!("unknown resource `[{other}]`"))),
                };
                out.push(Token { tok: Tok::Res(res), offset: i });
            }
            '<' | '⟨' => {
                chars.next();
                let mut body = String::new();
                let mut closed = false;
                for (_, c) in chars.by_ref() {
                    if c == '>' || c == '⟩' {
                        closed = true;
                        break;
                    }
                    body.push(c);
                }
                if !closed {
                    return Err(ParseError::new(i, "unterminated `<` resource"));
                }
                out.push(Token { tok: Tok::Res(angle_resource(body.trim(), i)?), offset: i });
            }
            c if c.is_ascii_digit() || c == '.' => {
                let mut s = String::new();
                let mut prev = ' ';
                while let Some(&(_, c)) = chars.peek() {
                    let exp_sign = (c == '+' || c == '-') && (prev == 'e' || prev == 'E');
                    if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || exp_sign {
                        s.push(c);
                        prev = c;
                        chars.next();
                    } else {
                        break;
                    }
                }
                let v: f64 = s.parse().map_err(|_| ParseError::new(i, format!("malformed number `{s}`")))?;
                out.push(Token { tok: Tok::Number(v), offset: i });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if is_ident_char(c) {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let tok = if s == "inf" { Tok::Infinity } else { Tok::Ident(s) };
                out.push(Token { tok, offset: i });
            }
            other => return Err(ParseError::new(i, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '\'')
}

fn valid_state(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '|' | '\'' | '{' | '}' | ','))
}

fn angle_resource(body: &str, offset: usize) -> Result<Resource, ParseError> {
    if let Some((channel, state)) = body.split_once(':') {
        let (channel, state) = (channel.trim(), state.trim());
        if !valid_name(channel) || !valid_state(state) {
            return Err(ParseError::new(offset, format!("malformed relative resource `<{body}>`")));
        }
        return Ok(Resource::Relative { channel: channel.into(), state: state.into() });
    }
    if let Some((name, partition)) = body.split_once('_') {
        if !valid_name(name) || !valid_state(partition) {
            return Err(ParseError::new(offset, format!("malformed state resource `<{body}>`")));
        }
        return Ok(Resource::State { name: name.into(), partition: partition.into() });
    }
    if !valid_name(body) {
        return Err(ParseError::new(offset, format!("malformed resource `<{body}>`")));
    }
    Ok(Resource::Noisy(body.into()))
}
