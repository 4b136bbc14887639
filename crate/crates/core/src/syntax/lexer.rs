use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    /// `functional` is set when `(` follows with no space in between.
    Atom { name: String, functional: bool },
    Var(String),
    Int(i64),
    Float(f64),
    Str(String),
    Open,
    Close,
    OpenList,
    CloseList,
    Comma,
    Bar,
    End,
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const SYMBOL_CHARS: &str = "+-*/\\^<>=~:.?@#&$";

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;

    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let err = |msg: String| Error::Parse { line: tl, col: tc, msg };
        if c.is_whitespace() {
            bump!();
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                bump!();
            }
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'*') {
            bump!();
            bump!();
            while i < chars.len() && !(chars[i] == '*' && chars.get(i + 1) == Some(&'/')) {
                bump!();
            }
            if i >= chars.len() {
                return Err(err("unterminated comment".into()));
            }
            bump!();
            bump!();
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                bump!();
            }
            let mut is_float = false;
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                is_float = true;
                bump!();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    bump!();
                }
            }
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    is_float = true;
                    while i < j {
                        bump!();
                    }
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        bump!();
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            if is_float {
                Tok::Float(text.parse().map_err(|_| err(format!("bad number {text}")))?)
            } else {
                Tok::Int(text.parse().map_err(|_| err(format!("integer out of range {text}")))?)
            }
        } else if c == '_' || c.is_uppercase() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                bump!();
            }
            Tok::Var(chars[start..i].iter().collect())
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                bump!();
            }
            let name = chars[start..i].iter().collect();
            Tok::Atom { name, functional: chars.get(i) == Some(&'(') }
        } else if c == '\'' || c == '"' {
            let quote = c;
            bump!();
            let mut s = String::new();
            loop {
                if i >= chars.len() {
                    return Err(err("unterminated quoted item".into()));
                }
                let d = chars[i];
                if d == quote {
                    if chars.get(i + 1) == Some(&quote) {
                        s.push(quote);
                        bump!();
                        bump!();
                        continue;
                    }
                    bump!();
                    break;
                }
                if d == '\\' {
                    bump!();
                    let e = *chars.get(i).ok_or_else(|| err("bad escape".into()))?;
                    s.push(match e {
                        'n' => '\n',
                        't' => '\t',
                        other => other,
                    });
                    bump!();
                    continue;
                }
                s.push(d);
                bump!();
            }
            if quote == '"' {
                Tok::Str(s)
            } else if s.starts_with('$') {
                return Err(err(format!("reserved symbol {s}")));
            } else {
                Tok::Atom { name: s, functional: chars.get(i) == Some(&'(') }
            }
        } else if c == '.'
            && chars.get(i + 1).is_none_or(|n| n.is_whitespace() || *n == '%')
        {
            bump!();
            Tok::End
        } else if SYMBOL_CHARS.contains(c) {
            let start = i;
            while i < chars.len() && SYMBOL_CHARS.contains(chars[i]) {
                // A trailing `.` before layout ends the clause.
                if chars[i] == '.'
                    && i > start
                    && chars.get(i + 1).is_none_or(|n| n.is_whitespace() || *n == '%')
                {
                    break;
                }
                bump!();
            }
            let name: String = chars[start..i].iter().collect();
            if name.contains('$') {
                return Err(err(format!("reserved symbol {name}")));
            }
            Tok::Atom { name, functional: chars.get(i) == Some(&'(') }
        } else {
            bump!();
            match c {
                '(' => Tok::Open,
                ')' => Tok::Close,
                '[' => Tok::OpenList,
                ']' => Tok::CloseList,
                ',' => Tok::Comma,
                '|' => Tok::Bar,
                '!' | ';' => Tok::Atom { name: c.to_string(), functional: chars.get(i) == Some(&'(') },
                other => return Err(err(format!("unexpected character {other:?}"))),
            }
        };
        out.push(Token { tok, line: tl, col: tc });
    }
    Ok(out)
}
