//! Facet-list files: bracket lists with an optional `name:=` prefix, one
//! facet per line, or plain JSON.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FacetFormat {
    Bracket,
    Lines,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetFile {
    pub name: Option<String>,
    pub facets: Vec<Vec<i64>>,
    pub format: FacetFormat,
}

impl FacetFile {
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets(&self.facets)
    }

    /// Renders the file in its own format.
    pub fn serialize(&self) -> String {
        self.serialize_as(self.format)
    }

    pub fn serialize_as(&self, format: FacetFormat) -> String {
        let bracket = |facets: &[Vec<i64>]| {
            let inner: Vec<String> = facets
                .iter()
                .map(|f| format!("[{}]", f.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            format!("[{}]", inner.join(","))
        };
        match format {
            FacetFormat::Bracket => match &self.name {
                Some(name) => format!("{name}:={};\n", bracket(&self.facets)),
                None => format!("{};\n", bracket(&self.facets)),
            },
            FacetFormat::Json => format!("{}\n", bracket(&self.facets)),
            FacetFormat::Lines => {
                let mut out = String::new();
                if let Some(name) = &self.name {
                    let _ = writeln!(out, "# name: {name}");
                }
                for f in &self.facets {
                    let _ = writeln!(out, "{}", f.iter().map(i64::to_string).collect::<Vec<_>>().join(" "));
                }
                out
            }
        }
    }
}

pub fn parse_facet_file(text: &str) -> Result<FacetFile> {
    let first = text
        .lines()
        .map(str::trim_start)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.chars().next());
    let file = match first {
        None => return Err(Error::EmptyFile),
        Some(c) if c.is_ascii_digit() || c == '-' || c == '+' => parse_lines(text)?,
        Some(_) => Scanner::new(text).bracket_file()?,
    };
    if file.facets.is_empty() {
        return Err(Error::EmptyFile);
    }
    Ok(file)
}

fn parse_lines(text: &str) -> Result<FacetFile> {
    let mut name = None;
    let mut facets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let (content, comment) = match raw.find('#') {
            Some(p) => (&raw[..p], Some(&raw[p + 1..])),
            None => (raw, None),
        };
        if let Some(n) = comment.and_then(|c| c.trim().strip_prefix("name:")) {
            if facets.is_empty() && name.is_none() {
                name = Some(n.trim().to_string());
            }
        }
        let mut facet = Vec::new();
        let mut offset = 0;
        for token in content.split_whitespace() {
            let col = content[offset..].find(token).unwrap() + offset;
            offset = col + token.len();
            let label = token.parse::<i64>().map_err(|_| Error::Syntax {
                line: i + 1,
                column: raw[..col].chars().count() + 1,
                message: format!("expected an integer label, found {token:?}"),
            })?;
            facet.push(label);
        }
        if !facet.is_empty() {
            facets.push(facet);
        }
    }
    Ok(FacetFile {
        name,
        facets,
        format: FacetFormat::Lines,
    })
}

struct Scanner<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            chars: text.chars().collect(),
            pos: 0,
            text,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let (mut line, mut column) = (1, 1);
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += 1;
            } else if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn bracket_file(mut self) -> Result<FacetFile> {
        self.skip_ws();
        let mut name = None;
        if self.peek().is_some_and(|c| c.is_alphabetic() || c == '_') {
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_alphanumeric() || "_.-".contains(c)) {
                self.pos += 1;
            }
            name = Some(self.chars[start..self.pos].iter().collect::<String>());
            self.skip_ws();
            if self.peek() == Some(':') {
                self.pos += 1;
            }
            self.expect('=')?;
        }
        let facets = self.list(|s| s.list(Scanner::integer))?;
        self.skip_ws();
        let mut terminated = false;
        if self.peek() == Some(';') {
            self.pos += 1;
            terminated = true;
            self.skip_ws();
        }
        if let Some(c) = self.peek() {
            return Err(self.error(format!("unexpected '{c}' after the facet list")));
        }
        let format = if name.is_none() && !terminated && serde_json::from_str::<Vec<Vec<i64>>>(self.text).is_ok() {
            FacetFormat::Json
        } else {
            FacetFormat::Bracket
        };
        Ok(FacetFile { name, facets, format })
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect('[')?;
        let mut out = Vec::new();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(c) => return Err(self.error(format!("expected ',' or ']', found '{c}'"))),
                None => return Err(self.error("unbalanced '[': input ended inside a list")),
            }
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-' | '+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let token: String = self.chars[start..self.pos].iter().collect();
        token.parse().map_err(|_| {
            self.pos = start;
            match self.peek() {
                Some(c) => self.error(format!("expected an integer label, found '{c}'")),
                None => self.error("expected an integer label, found end of input"),
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_with_name() {
        let f = parse_facet_file("facets:=[[1,2],[2,3],[1,3]];").unwrap();
        assert_eq!(f.name.as_deref(), Some("facets"));
        assert_eq!(f.facets, vec![vec![1, 2], vec![2, 3], vec![1, 3]]);
        assert_eq!(f.format, FacetFormat::Bracket);
        let g = parse_facet_file("manifold_2_6 = [ [1, 2,3],\n  [ 2,3, 4 ] ]\n").unwrap();
        assert_eq!(g.facets.len(), 2);
    }

    #[test]
    fn json_and_lines() {
        let f = parse_facet_file("[[0,1,2]]").unwrap();
        assert_eq!((f.facets.len(), f.format), (1, FacetFormat::Json));
        let f = parse_facet_file("# name: tri\n0 1 2\n\n2 3 # tail\n").unwrap();
        assert_eq!(f.name.as_deref(), Some("tri"));
        assert_eq!(f.facets, vec![vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(f.format, FacetFormat::Lines);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_facet_file("[[1,2],[2]") {
            Err(Error::Syntax { line: 1, column, .. }) => assert_eq!(column, 11),
            other => panic!("{other:?}"),
        }
        match parse_facet_file("x:=[[1,2],\n [2,a]]") {
            Err(Error::Syntax { line: 2, column: 5, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_facet_file("0 1\n2 z\n"), Err(Error::Syntax { line: 2, column: 3, .. })));
        assert!(matches!(parse_facet_file(" \n# only a comment\n"), Err(Error::EmptyFile)));
        assert!(matches!(parse_facet_file("[]"), Err(Error::EmptyFile)));
        assert!(matches!(parse_facet_file("[[1]] x"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn round_trips() {
        let f = FacetFile {
            name: Some("k".into()),
            facets: vec![vec![-3, 1, 7], vec![2]],
            format: FacetFormat::Bracket,
        };
        for format in [FacetFormat::Bracket, FacetFormat::Lines] {
            let g = parse_facet_file(&f.serialize_as(format)).unwrap();
            assert_eq!((g.name.as_ref(), &g.facets, g.format), (f.name.as_ref(), &f.facets, format));
        }
        let g = parse_facet_file(&f.serialize_as(FacetFormat::Json)).unwrap();
        assert_eq!((&g.facets, g.format), (&f.facets, FacetFormat::Json));
    }
}
