//! Layout and wording features that describe a document's structure rather
//! than its topic.
//!
//! Conventions:
//! - Lines are the non-blank lines of every page, right-trimmed; the document
//!   text is those lines joined with `\n`.
//! - Tokens are whitespace-separated; `numTok` counts them.
//! - Positions are the token offset of a marker's first token divided by
//!   `numTok`, or -1 when the marker is absent.
//! - A section heading is a line of at most five tokens whose first token
//!   (after an optional section number such as `1.` or `IV`) is one of the
//!   section keywords, compared case-insensitively with surrounding
//!   punctuation removed.

use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::corpus::Document;

macro_rules! slots {
    ($($variant:ident => $name:literal,)*) => {
        /// Named slots of [`StructuralFeatures`], in vector order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum Slot {
            $($variant,)*
        }

        impl Slot {
            pub const ALL: &'static [Slot] = &[$(Slot::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Slot::$variant => $name,)*
                }
            }
        }

        pub const STRUCTURAL_NAMES: &[&str] = &[$($name,)*];
    };
}

slots! {
    PgCount => "pgCount",
    FileSize => "fileSize",
    StrLength => "strLength",
    NumTok => "numTok",
    NumLines => "numLines",
    AvgNumWordsPerPage => "avgNumWordsPerPage",
    AvgNumLinesPerPage => "avgNumLinesPerPage",
    AvgNumWordsPerLine => "avgNumWordsPerLine",
    RefCount => "refCount",
    RefRatio => "refRatio",
    SpcRatio => "spcRatio",
    UcaseRatio => "ucaseRatio",
    SymbolRatio => "symbolRatio",
    LnRatio => "lnratio",
    UcaseStart => "ucaseStart",
    SymbolStart => "symbolStart",
    TokBeforeRef => "tokBeforeRef",
    Abstract => "abstract",
    Intro => "intro",
    Concl => "concl",
    Ack => "ack",
    References => "references",
    Chapter => "chapter",
    PositionOfAbstract => "positionOfAbstract",
    PositionOfIntro => "positionOfIntro",
    PositionOfConcl => "positionOfConcl",
    PositionOfAck => "positionOfAck",
    PositionOfReferences => "positionOfReferences",
    PositionOfChapter => "positionOfChapter",
    AckBeforeIntro => "AckBeforeIntro",
    AckAfterIntro => "AckAfterIntro",
    ThisPaper => "thisPaper",
    ThisBook => "thisBook",
    ThisThesis => "thisThesis",
    ThisChapter => "thisChapter",
    ThisDocument => "thisDocument",
    ThisSection => "thisSection",
    ResearchInterests => "researchInterests",
    ResearchExperience => "researchExperience",
    Education => "education",
    Publications => "publications",
    PositionOfThisPaper => "positionOfThisPaper",
    PositionOfThisBook => "positionOfThisBook",
    PositionOfThisThesis => "positionOfThisThesis",
}

pub const STRUCTURAL_ARITY: usize = STRUCTURAL_NAMES.len();

const ABSENT: f64 = -1.0;

/// Fixed-order structural feature vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructuralFeatures {
    values: Vec<f64>,
}

impl StructuralFeatures {
    pub fn get(&self, slot: Slot) -> f64 {
        self.values[slot as usize]
    }

    pub fn by_name(&self, name: &str) -> Option<f64> {
        STRUCTURAL_NAMES.iter().position(|n| *n == name).map(|i| self.values[i])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn set(&mut self, slot: Slot, v: f64) {
        self.values[slot as usize] = v;
    }
}

#[derive(Clone, Copy)]
enum Section {
    Abstract,
    Intro,
    Concl,
    Ack,
    References,
    Chapter,
}

impl Section {
    const ALL: [Section; 6] = [
        Section::Abstract,
        Section::Intro,
        Section::Concl,
        Section::Ack,
        Section::References,
        Section::Chapter,
    ];

    fn from_keyword(word: &str) -> Option<Section> {
        Some(match word {
            "abstract" => Section::Abstract,
            "introduction" => Section::Intro,
            "conclusion" | "conclusions" => Section::Concl,
            "acknowledgment" | "acknowledgments" | "acknowledgement" | "acknowledgements" => Section::Ack,
            "references" | "bibliography" => Section::References,
            "chapter" => Section::Chapter,
            _ => return None,
        })
    }

    fn slots(self) -> (Slot, Slot) {
        match self {
            Section::Abstract => (Slot::Abstract, Slot::PositionOfAbstract),
            Section::Intro => (Slot::Intro, Slot::PositionOfIntro),
            Section::Concl => (Slot::Concl, Slot::PositionOfConcl),
            Section::Ack => (Slot::Ack, Slot::PositionOfAck),
            Section::References => (Slot::References, Slot::PositionOfReferences),
            Section::Chapter => (Slot::Chapter, Slot::PositionOfChapter),
        }
    }
}

/// (phrase, presence slot, optional position slot)
const CONTAINMENT: &[(&[&str], Slot, Option<Slot>)] = &[
    (&["this", "paper"], Slot::ThisPaper, Some(Slot::PositionOfThisPaper)),
    (&["this", "book"], Slot::ThisBook, Some(Slot::PositionOfThisBook)),
    (&["this", "thesis"], Slot::ThisThesis, Some(Slot::PositionOfThisThesis)),
    (&["this", "chapter"], Slot::ThisChapter, None),
    (&["this", "document"], Slot::ThisDocument, None),
    (&["this", "section"], Slot::ThisSection, None),
    (&["research", "interests"], Slot::ResearchInterests, None),
    (&["research", "experience"], Slot::ResearchExperience, None),
    (&["education"], Slot::Education, None),
    (&["publications"], Slot::Publications, None),
];

fn normalize(token: &str) -> String {
    token.trim_matches(|c: char| !c.is_alphanumeric()).to_lowercase()
}

fn is_section_number(token: &str) -> bool {
    let t = token.trim_end_matches(['.', ')']);
    if t.is_empty() {
        return false;
    }
    let numeric = t.split('.').all(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()));
    let roman = t.len() <= 5 && t.chars().all(|c| matches!(c.to_ascii_lowercase(), 'i' | 'v' | 'x' | 'l' | 'c'));
    numeric || roman
}

/// Section keyword opening a heading line, if the line is one.
fn heading_section(line_tokens: &[&str]) -> Option<Section> {
    if line_tokens.is_empty() || line_tokens.len() > 5 {
        return None;
    }
    if let Some(s) = Section::from_keyword(&normalize(line_tokens[0])) {
        return Some(s);
    }
    if line_tokens.len() > 1 && is_section_number(line_tokens[0]) {
        return Section::from_keyword(&normalize(line_tokens[1]));
    }
    None
}

fn reference_patterns() -> &'static [Regex; 2] {
    static RE: OnceLock<[Regex; 2]> = OnceLock::new();
    RE.get_or_init(|| {
        [
            Regex::new(r"\[\s*\d+(?:\s*[,;\-\u{2013}]\s*\d+)*\s*\]").expect("valid regex"),
            Regex::new(r"\([^()]*\d{4}[a-z]?\)").expect("valid regex"),
        ]
    })
}

/// Bracketed numeric citations (`[3]`, `[4,5]`, `[1-3]`) plus parenthesized
/// author-year citations ending in a four-digit year (`(Smith, 2008)`).
pub fn count_reference_mentions(text: &str) -> usize {
    reference_patterns().iter().map(|re| re.find_iter(text).count()).sum()
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        (num / den).clamp(0.0, 1.0)
    } else {
        0.0
    }
}

/// Compute the structural feature vector of `doc`.
pub fn extract_structural(doc: &Document) -> StructuralFeatures {
    let mut f = StructuralFeatures {
        values: vec![0.0; STRUCTURAL_ARITY],
    };

    let lines: Vec<&str> = doc
        .pages
        .iter()
        .flat_map(|p| p.lines())
        .map(str::trim_end)
        .filter(|l| !l.trim_start().is_empty())
        .collect();
    let text = lines.join("\n");

    let mut tokens: Vec<&str> = Vec::new();
    let mut line_starts = Vec::with_capacity(lines.len());
    for line in &lines {
        line_starts.push(tokens.len());
        tokens.extend(line.split_whitespace());
    }
    let num_tok = tokens.len() as f64;
    let num_lines = lines.len() as f64;
    let pages = doc.page_count.max(1) as f64;

    let (mut chars, mut spaces, mut upper, mut symbols) = (0usize, 0usize, 0usize, 0usize);
    for c in text.chars() {
        chars += 1;
        if c.is_whitespace() {
            spaces += 1;
        } else if c.is_uppercase() {
            upper += 1;
        } else if !c.is_alphanumeric() {
            symbols += 1;
        }
    }
    let str_len = chars as f64;
    let ref_count = count_reference_mentions(&text) as f64;

    let (mut shortest, mut longest) = (usize::MAX, 0usize);
    let (mut ucase_start, mut symbol_start) = (0usize, 0usize);
    for line in &lines {
        let trimmed = line.trim_start();
        let len = trimmed.chars().count();
        shortest = shortest.min(len);
        longest = longest.max(len);
        if let Some(c) = trimmed.chars().next() {
            if c.is_uppercase() {
                ucase_start += 1;
            } else if !c.is_alphanumeric() {
                symbol_start += 1;
            }
        }
    }

    f.set(Slot::PgCount, doc.page_count as f64);
    f.set(Slot::FileSize, doc.file_size_kb);
    f.set(Slot::StrLength, str_len);
    f.set(Slot::NumTok, num_tok);
    f.set(Slot::NumLines, num_lines);
    f.set(Slot::AvgNumWordsPerPage, num_tok / pages);
    f.set(Slot::AvgNumLinesPerPage, num_lines / pages);
    f.set(Slot::AvgNumWordsPerLine, if num_lines > 0.0 { num_tok / num_lines } else { 0.0 });
    f.set(Slot::RefCount, ref_count);
    f.set(Slot::RefRatio, ratio(ref_count, num_tok));
    f.set(Slot::SpcRatio, ratio(spaces as f64, str_len));
    f.set(Slot::UcaseRatio, ratio(upper as f64, str_len));
    f.set(Slot::SymbolRatio, ratio(symbols as f64, str_len));
    f.set(Slot::LnRatio, if longest > 0 { ratio(shortest as f64, longest as f64) } else { 0.0 });
    f.set(Slot::UcaseStart, ucase_start as f64);
    f.set(Slot::SymbolStart, symbol_start as f64);

    // First heading offset per section.
    let mut first: [Option<usize>; 6] = [None; 6];
    for i in 0..lines.len() {
        let end = line_starts.get(i + 1).copied().unwrap_or(tokens.len());
        if let Some(s) = heading_section(&tokens[line_starts[i]..end]) {
            first[s as usize].get_or_insert(line_starts[i]);
        }
    }
    let position = |offset: Option<usize>| offset.map_or(ABSENT, |o| o as f64 / num_tok);
    for s in Section::ALL {
        let (flag, pos) = s.slots();
        let offset = first[s as usize];
        f.set(flag, offset.is_some() as u8 as f64);
        f.set(pos, position(offset));
    }
    let refs = first[Section::References as usize];
    f.set(Slot::TokBeforeRef, refs.map_or(num_tok, |o| o as f64));
    if let (Some(ack), Some(intro)) = (first[Section::Ack as usize], first[Section::Intro as usize]) {
        f.set(Slot::AckBeforeIntro, (ack < intro) as u8 as f64);
        f.set(Slot::AckAfterIntro, (ack > intro) as u8 as f64);
    }

    let words: Vec<String> = tokens.iter().map(|t| normalize(t)).collect();
    for (phrase, flag, pos) in CONTAINMENT {
        let at = words
            .windows(phrase.len())
            .position(|w| w.iter().zip(phrase.iter()).all(|(a, b)| a == b));
        f.set(*flag, at.is_some() as u8 as f64);
        if let Some(pos) = pos {
            f.set(*pos, position(at));
        }
    }

    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Label;

    fn doc(text: &str) -> Document {
        Document::from_text("d", Label::InScope, text, None, 3.0)
    }

    #[test]
    fn arity_and_names() {
        assert_eq!(STRUCTURAL_ARITY, 44);
        assert_eq!(Slot::ALL.len(), STRUCTURAL_ARITY);
        for (i, s) in Slot::ALL.iter().enumerate() {
            assert_eq!(*s as usize, i);
            assert_eq!(s.name(), STRUCTURAL_NAMES[i]);
        }
    }

    #[test]
    fn degenerate_document() {
        let f = extract_structural(&doc(""));
        for (slot, v) in Slot::ALL.iter().zip(f.values()) {
            let name = slot.name();
            let want = match name {
                "pgCount" => 1.0,
                "fileSize" => 3.0,
                n if n.starts_with("positionOf") => -1.0,
                _ => 0.0,
            };
            assert_eq!(*v, want, "{name}");
        }
    }

    #[test]
    fn reference_mentions() {
        assert_eq!(count_reference_mentions("as shown in [3] and [4,5]"), 2);
        assert_eq!(count_reference_mentions(""), 0);
        assert_eq!(count_reference_mentions("see (Smith, 2008)"), 1);
        assert_eq!(count_reference_mentions("[a] (no year) [1-3]"), 1);
    }

    #[test]
    fn heading_detection() {
        assert!(matches!(heading_section(&["References"]), Some(Section::References)));
        assert!(matches!(heading_section(&["1.", "Introduction"]), Some(Section::Intro)));
        assert!(matches!(heading_section(&["IV.", "CONCLUSIONS"]), Some(Section::Concl)));
        assert!(heading_section(&["Abstraction"]).is_none());
        assert!(heading_section(&["references", "a", "b", "c", "d", "e"]).is_none());
    }

    #[test]
    fn line_statistics() {
        let f = extract_structural(&doc("Hello world\n  - item\u{c}abc"));
        assert_eq!(f.get(Slot::NumLines), 3.0);
        assert_eq!(f.get(Slot::NumTok), 5.0);
        assert_eq!(f.get(Slot::UcaseStart), 1.0);
        assert_eq!(f.get(Slot::SymbolStart), 1.0);
        assert_eq!(f.get(Slot::LnRatio), 3.0 / 11.0);
        assert_eq!(f.get(Slot::AvgNumWordsPerPage), 2.5);
        assert_eq!(f.get(Slot::PgCount), 2.0);
    }

    #[test]
    fn ack_order_flags() {
        let f = extract_structural(&doc("Acknowledgments\nthanks\nIntroduction\nbody"));
        assert_eq!((f.get(Slot::AckBeforeIntro), f.get(Slot::AckAfterIntro)), (1.0, 0.0));
        let f = extract_structural(&doc("Introduction\nbody\nAcknowledgements\nthanks"));
        assert_eq!((f.get(Slot::AckBeforeIntro), f.get(Slot::AckAfterIntro)), (0.0, 1.0));
        let f = extract_structural(&doc("Acknowledgements\nthanks"));
        assert_eq!((f.get(Slot::AckBeforeIntro), f.get(Slot::AckAfterIntro)), (0.0, 0.0));
    }
}
