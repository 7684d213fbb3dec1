//! Scenario files: a `version` line, optional `field` and `seed` directives, then one command per
//! line. `#` starts a comment outside quotes.
//!
//! ```text
//! version 1
//! field 2
//! seed 7
//! classify --N 3 --n 1 --dim-cap 8
//! pp dual --formula "x1*a = 0"
//! ```

use clap::error::{ContextKind, ContextValue};
use clap::Parser;

use crate::commands::{Command, ExecError, FieldSpec};

pub const SCENARIO_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ScenarioError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

/// A word of a scenario line; `col` is the 1-based column of its first content character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub col: usize,
}

#[derive(Debug, Clone)]
pub struct ScenarioLine {
    pub line: usize,
    /// The command as written, without comment or surrounding blanks.
    pub text: String,
    pub tokens: Vec<Token>,
    pub command: Command,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub version: u32,
    pub field: Option<FieldSpec>,
    pub seed: Option<u64>,
    pub commands: Vec<ScenarioLine>,
}

#[derive(Parser, Debug)]
#[command(name = "ppz", no_binary_name = true, disable_help_flag = true, disable_version_flag = true)]
struct LineParser {
    #[command(subcommand)]
    command: Command,
}

/// Splits a line into words, honouring single and double quotes; returns the words and the
/// byte length of the line before any comment.
pub fn tokenize(line: &str) -> Result<(Vec<Token>, usize), (usize, String)> {
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (byte, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            return Ok((tokens, byte));
        }
        let mut text = String::new();
        let mut col = None;
        while i < chars.len() && !chars[i].1.is_whitespace() {
            let c = chars[i].1;
            if c == '"' || c == '\'' {
                let open = i;
                i += 1;
                col.get_or_insert(i + 1);
                loop {
                    match chars.get(i) {
                        None => return Err((open + 1, "unterminated quote".into())),
                        Some(&(_, q)) if q == c => break,
                        Some(&(_, '\\')) if c == '"' && matches!(chars.get(i + 1), Some((_, '"' | '\\'))) => {
                            text.push(chars[i + 1].1);
                            i += 2;
                        }
                        Some(&(_, ch)) => {
                            text.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
            } else {
                col.get_or_insert(i + 1);
                text.push(c);
                i += 1;
            }
        }
        tokens.push(Token { text, col: col.unwrap_or(i + 1) });
    }
    Ok((tokens, line.len()))
}

/// Column of the token a clap error is about, if it can be identified.
fn clap_error_column(err: &clap::Error, tokens: &[Token]) -> Option<usize> {
    let strings = |kind| match err.get(kind) {
        Some(ContextValue::String(s)) => vec![s.clone()],
        Some(ContextValue::Strings(v)) => v.clone(),
        _ => Vec::new(),
    };
    for value in strings(ContextKind::InvalidValue) {
        if let Some(t) = tokens.iter().skip(1).find(|t| t.text == value || t.text.ends_with(&format!("={value}"))) {
            return Some(t.col);
        }
    }
    for arg in strings(ContextKind::InvalidArg).into_iter().chain(strings(ContextKind::InvalidSubcommand)) {
        let flag = arg.split([' ', '=']).next().unwrap_or("").to_string();
        if let Some(t) = tokens.iter().find(|t| t.text == flag || t.text.starts_with(&format!("{flag}="))) {
            return Some(t.col);
        }
    }
    None
}

fn clap_message(err: &clap::Error) -> String {
    let rendered = err.render().to_string();
    let first = rendered.lines().next().unwrap_or("").trim();
    first.strip_prefix("error: ").unwrap_or(first).to_string()
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let mut version = None;
    let mut field = None;
    let mut seed = None;
    let mut commands = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let fail = |col: usize, msg: String| ScenarioError { line, col, msg };
        let (tokens, end) = tokenize(raw).map_err(|(col, msg)| fail(col, msg))?;
        let Some(head) = tokens.first() else { continue };
        let directive = |tokens: &[Token]| -> Result<Token, ScenarioError> {
            match tokens {
                [_, value] => Ok(value.clone()),
                [d] => Err(fail(d.col + d.text.len(), format!("`{}` needs a value", d.text))),
                [_, _, extra, ..] => Err(fail(extra.col, format!("unexpected `{}`", extra.text))),
                [] => unreachable!(),
            }
        };
        if version.is_none() && head.text != "version" {
            return Err(fail(head.col, format!("scenario must start with `version {SCENARIO_VERSION}`")));
        }
        match head.text.as_str() {
            "version" => {
                if version.is_some() {
                    return Err(fail(head.col, "duplicate `version`".into()));
                }
                let v = directive(&tokens)?;
                match v.text.parse::<u32>() {
                    Ok(SCENARIO_VERSION) => version = Some(SCENARIO_VERSION),
                    _ => return Err(fail(v.col, format!("unsupported scenario version `{}`; expected {SCENARIO_VERSION}", v.text))),
                }
            }
            "field" | "seed" if !commands.is_empty() => {
                return Err(fail(head.col, format!("`{}` must precede the first command", head.text)));
            }
            "field" => {
                let v = directive(&tokens)?;
                if field.replace(v.text.parse::<FieldSpec>().map_err(|e| fail(v.col, e))?).is_some() {
                    return Err(fail(head.col, "duplicate `field`".into()));
                }
            }
            "seed" => {
                let v = directive(&tokens)?;
                let s = v.text.parse::<u64>().map_err(|_| fail(v.col, format!("expected an unsigned integer, found `{}`", v.text)))?;
                if seed.replace(s).is_some() {
                    return Err(fail(head.col, "duplicate `seed`".into()));
                }
            }
            "run" => return Err(fail(head.col, "`run` cannot be nested in a scenario".into())),
            _ => {
                let parsed = LineParser::try_parse_from(tokens.iter().map(|t| t.text.as_str())).map_err(|e| {
                    let col = clap_error_column(&e, &tokens).unwrap_or(head.col);
                    fail(col, clap_message(&e))
                })?;
                let text = raw[..end].trim().to_string();
                commands.push(ScenarioLine { line, text, tokens, command: parsed.command });
            }
        }
    }
    let version = version.ok_or(ScenarioError { line: 1, col: 1, msg: format!("missing `version {SCENARIO_VERSION}` line") })?;
    Ok(Scenario { version, field, seed, commands })
}

impl ScenarioLine {
    /// Places a preparation error at the offending column of this line.
    pub fn locate(&self, err: &ExecError) -> ScenarioError {
        let col = match err {
            ExecError::Literal { literal, offset, .. } => match self.tokens.iter().find(|t| t.text == *literal) {
                Some(t) => t.col + offset - 1,
                None => self.tokens[0].col,
            },
            ExecError::Usage(_) => self.tokens[0].col,
        };
        let msg = match err {
            ExecError::Literal { msg, .. } => msg.clone(),
            ExecError::Usage(msg) => msg.clone(),
        };
        ScenarioError { line: self.line, col, msg }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_keep_quote_columns() {
        let (t, end) = tokenize(r#"pp dual --formula "x1*a = 0"  # note"#).unwrap();
        let words: Vec<&str> = t.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(words, ["pp", "dual", "--formula", "x1*a = 0"]);
        assert_eq!(t[3].col, 20);
        assert_eq!(end, 30);
        assert_eq!(tokenize("a \"b").unwrap_err().0, 3);
        assert_eq!(tokenize(r#"x "a\"b""#).unwrap().0[1].text, "a\"b");
    }

    #[test]
    fn header_and_commands() {
        let s = parse_scenario("# demo\nversion 1\nfield rational\nseed 5\n\nsuite ziegler # closure\n").unwrap();
        assert_eq!(s.field, Some(FieldSpec::Rational));
        assert_eq!(s.seed, Some(5));
        assert_eq!(s.commands.len(), 1);
        assert_eq!(s.commands[0].line, 6);
        assert_eq!(s.commands[0].text, "suite ziegler");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_scenario("suite ziegler\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 1));
        let e = parse_scenario("version 2\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 9));
        let e = parse_scenario("version 1\nclassify --N 3 --bogus 1\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 16));
        let e = parse_scenario("version 1\nclassify --N x --n 1\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 14));
        let e = parse_scenario("version 1\nfrobnicate\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 1));
        let e = parse_scenario("version 1\nsuite mesh\nseed 3\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_scenario("").is_err());
    }

    #[test]
    fn literal_errors_point_into_the_literal() {
        let s = parse_scenario("version 1\npp dual --formula \"x1*q = 0\"\n").unwrap();
        let line = &s.commands[0];
        let e = line.locate(&ExecError::Literal { literal: "x1*q = 0".into(), offset: 4, msg: "unknown label".into() });
        assert_eq!((e.line, e.col), (2, 23));
    }
}
