use std::path::PathBuf;

use clap::{ArgGroup, Args};

use crate::word::{coded_word, sturmian_standard, Coding, Dfao, InfiniteWord, Letter, Morphism, WordError};

use super::CliError;

/// Where the word comes from. Exactly one generator flag is required;
/// `--code` and `--head` post-process any of them.
#[derive(Debug, Clone, Args)]
#[group(skip)]
#[command(group(
    ArgGroup::new("source")
        .required(true)
        .args(["morphism", "dfao", "periodic", "sturmian", "prefix_file"])
))]
pub struct SourceArgs {
    /// Morphism rules such as `0->01;1->0`; the word is its fixed point.
    #[arg(long)]
    pub morphism: Option<String>,
    /// First letter of the fixed point.
    #[arg(long, default_value_t = 0, requires = "morphism")]
    pub start: Letter,
    /// JSON automaton file.
    #[arg(long, value_name = "PATH")]
    pub dfao: Option<PathBuf>,
    /// Period letters such as `1,2`.
    #[arg(long)]
    pub periodic: Option<String>,
    /// Preperiod letters placed before `--periodic`.
    #[arg(long, requires = "periodic")]
    pub preperiod: Option<String>,
    /// Directive sequence of a standard Sturmian word, repeated cyclically.
    #[arg(long)]
    pub sturmian: Option<String>,
    /// Whitespace- or comma-separated letters; the word is this finite prefix.
    #[arg(long, value_name = "PATH")]
    pub prefix_file: Option<PathBuf>,
    /// Letter-to-letter coding such as `0=>1;1=>2`.
    #[arg(long)]
    pub code: Option<String>,
    /// Letters prepended after coding, such as `3`.
    #[arg(long)]
    pub head: Option<String>,
}

/// Parses `1,2 3` style letter lists, reporting line and column of a bad
/// token.
pub fn parse_letters(text: &str) -> Result<Vec<Letter>, WordError> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let mut col = 0;
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()) {
            let start = col;
            col += tok.chars().count() + 1;
            if tok.is_empty() {
                continue;
            }
            let v = tok.parse::<Letter>().map_err(|_| WordError::Parse {
                line: li + 1,
                column: start + 1,
                message: format!("expected a letter, found {tok:?}"),
            })?;
            out.push(v);
        }
    }
    Ok(out)
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

impl SourceArgs {
    /// The morphism and start letter, if the source is a fixed point.
    pub fn morphism(&self) -> Result<Option<(Morphism, Letter)>, CliError> {
        match &self.morphism {
            Some(m) => Ok(Some((Morphism::parse(m)?, self.start))),
            None => Ok(None),
        }
    }

    pub fn coding(&self) -> Result<Option<Coding>, CliError> {
        Ok(self.code.as_deref().map(Coding::parse).transpose()?)
    }

    pub fn build(&self) -> Result<InfiniteWord, CliError> {
        let base = if let Some((m, a)) = self.morphism()? {
            InfiniteWord::fixed_point(m, a)?
        } else if let Some(path) = &self.dfao {
            InfiniteWord::automatic(Dfao::from_json(&read(path)?)?)
        } else if let Some(p) = &self.periodic {
            let period = parse_letters(p)?;
            match &self.preperiod {
                Some(pre) => InfiniteWord::eventually_periodic(parse_letters(pre)?, period)?,
                None => InfiniteWord::periodic(period)?,
            }
        } else if let Some(d) = &self.sturmian {
            sturmian_standard(parse_letters(d)?)?
        } else if let Some(path) = &self.prefix_file {
            InfiniteWord::explicit(parse_letters(&read(path)?)?)
        } else {
            return Err(CliError::Usage("no word source given".into()));
        };
        let coded = match self.coding()? {
            Some(c) => coded_word(base, c)?,
            None => base,
        };
        Ok(match &self.head {
            Some(h) => InfiniteWord::prepend(parse_letters(h)?, coded),
            None => coded,
        })
    }
}
