//! Language tags, translation direction and the per-language surface profile.

use std::fmt;
use std::str::FromStr;

/// One of the two languages a network carries. Korean is always written in
/// Yale romanization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Language {
    Ko,
    En,
}

impl Language {
    pub const ALL: [Language; 2] = [Language::Ko, Language::En];

    pub fn code(self) -> &'static str {
        match self {
            Language::Ko => "ko",
            Language::En => "en",
        }
    }

    pub fn other(self) -> Language {
        match self {
            Language::Ko => Language::En,
            Language::En => Language::Ko,
        }
    }

    /// String inserted between morphemes when no irregular rule rewrites the
    /// boundary. Korean marks morpheme boundaries inside an Eojeol with a
    /// hyphen, the same mark used between syllables.
    pub fn morpheme_joiner(self) -> &'static str {
        match self {
            Language::Ko => "-",
            Language::En => "",
        }
    }

    /// Whether a generated sentence starts with a capital letter.
    pub fn capitalizes_sentences(self) -> bool {
        matches!(self, Language::En)
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for Language {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ko" => Ok(Language::Ko),
            "en" => Ok(Language::En),
            other => Err(format!("unknown language `{other}` (expected ko or en)")),
        }
    }
}

/// Translation direction. The engine only ever asks a direction for its
/// source and target language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Direction {
    source: Language,
}

impl Direction {
    pub const KO_EN: Direction = Direction { source: Language::Ko };
    pub const EN_KO: Direction = Direction { source: Language::En };

    pub fn from_source(source: Language) -> Self {
        Direction { source }
    }

    pub fn source(self) -> Language {
        self.source
    }

    pub fn target(self) -> Language {
        self.source.other()
    }

    pub fn reverse(self) -> Direction {
        Direction { source: self.target() }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.source(), self.target())
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ko-en" => Ok(Direction::KO_EN),
            "en-ko" => Ok(Direction::EN_KO),
            other => Err(format!("unknown direction `{other}` (expected ko-en or en-ko)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direction_parses_and_reverses() {
        let d: Direction = "en-ko".parse().unwrap();
        assert_eq!(d.source(), Language::En);
        assert_eq!(d.target(), Language::Ko);
        assert_eq!(d.reverse(), Direction::KO_EN);
        assert_eq!(d.to_string(), "en-ko");
        assert!("ko-ko".parse::<Direction>().is_err());
    }
}
