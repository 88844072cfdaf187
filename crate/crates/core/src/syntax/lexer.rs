use super::parser::ParseError;
use super::Pos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Let,
    RLet,
    In,
    Case,
    Of,
    LParen,
    RParen,
    LAngle,
    RAngle,
    DupOpen,
    DupClose,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Eq,
    Arrow,
    Define,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Let => "`let`".into(),
            Tok::RLet => "`rlet`".into(),
            Tok::In => "`in`".into(),
            Tok::Case => "`case`".into(),
            Tok::Of => "`of`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LAngle => "`<`".into(),
            Tok::RAngle => "`>`".into(),
            Tok::DupOpen => "`|_`".into(),
            Tok::DupClose => "`_|`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Define => "`=:`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub(crate) fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let (mut line, mut col) = (1u32, 1u32);

    macro_rules! advance {
        ($n:expr) => {
            for _ in 0..$n {
                if chars[i] == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
                i += 1;
            }
        };
    }

    while i < chars.len() {
        let c = chars[i];
        let next = chars.get(i + 1).copied();
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance!(1);
            continue;
        }
        if c == '-' && next == Some('-') {
            while i < chars.len() && chars[i] != '\n' {
                advance!(1);
            }
            continue;
        }
        let (tok, len) = match (c, next) {
            ('-', Some('>')) => (Tok::Arrow, 2),
            ('=', Some(':')) => (Tok::Define, 2),
            ('|', Some('_')) => (Tok::DupOpen, 2),
            ('_', Some('|')) => (Tok::DupClose, 2),
            ('→', _) => (Tok::Arrow, 1),
            ('≜', _) => (Tok::Define, 1),
            ('⌊', _) => (Tok::DupOpen, 1),
            ('⌋', _) => (Tok::DupClose, 1),
            ('⟨', _) | ('<', _) => (Tok::LAngle, 1),
            ('⟩', _) | ('>', _) => (Tok::RAngle, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('{', _) => (Tok::LBrace, 1),
            ('}', _) => (Tok::RBrace, 1),
            (',', _) => (Tok::Comma, 1),
            (';', _) => (Tok::Semi, 1),
            ('=', _) => (Tok::Eq, 1),
            _ if c.is_alphabetic() || c == '_' => {
                let start = i;
                let mut end = i;
                while end < chars.len()
                    && (chars[end].is_alphanumeric() || chars[end] == '_' || chars[end] == '\'')
                {
                    end += 1;
                }
                // `x_|` closes a dupeq rather than naming `x_`.
                if end > start + 1 && chars[end - 1] == '_' && chars.get(end) == Some(&'|') {
                    end -= 1;
                }
                let mut name: String = chars[start..end].iter().collect();
                let mut len = end - start;
                if chars.get(end) == Some(&'⁻') && chars.get(end + 1) == Some(&'¹') {
                    name.push_str("_inv");
                    len += 2;
                }
                let tok = match name.as_str() {
                    "let" => Tok::Let,
                    "rlet" => Tok::RLet,
                    "in" => Tok::In,
                    "case" => Tok::Case,
                    "of" => Tok::Of,
                    _ => Tok::Ident(name),
                };
                (tok, len)
            }
            _ => {
                return Err(ParseError {
                    pos,
                    message: format!("unexpected character `{c}`"),
                })
            }
        };
        out.push(Token { tok, pos });
        advance!(len);
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}
