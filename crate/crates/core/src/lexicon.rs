//! Category lexicons and tokenization.
//!
//! A lexicon maps category names to literal words and wildcard stems (`think*`
//! matches `think`, `thinks`, `thinking`). Literals live in a hash map and stems
//! in a character trie, so matching a token costs one hash lookup plus a walk
//! of at most `token.len()` trie edges.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::{Error, Result};

const DEMO_LEXICON: &str = include_str!("../data/demo_lexicon.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    Literal(String),
    Stem(String),
}

impl Pattern {
    pub fn text(&self) -> &str {
        match self {
            Pattern::Literal(s) | Pattern::Stem(s) => s,
        }
    }
}

impl std::fmt::Display for Pattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Pattern::Literal(s) => f.write_str(s),
            Pattern::Stem(s) => write!(f, "{s}*"),
        }
    }
}

#[derive(Debug, Default, Clone)]
struct TrieNode {
    children: Vec<(char, u32)>,
    categories: Vec<u16>,
}

#[derive(Debug, Clone)]
struct StemTrie {
    nodes: Vec<TrieNode>,
}

impl StemTrie {
    fn new() -> Self {
        StemTrie {
            nodes: vec![TrieNode::default()],
        }
    }

    fn insert(&mut self, stem: &str, category: u16) {
        let mut at = 0usize;
        for c in stem.chars() {
            at = match self.nodes[at].children.iter().find(|(k, _)| *k == c) {
                Some(&(_, next)) => next as usize,
                None => {
                    let next = self.nodes.len();
                    self.nodes.push(TrieNode::default());
                    self.nodes[at].children.push((c, next as u32));
                    next
                }
            };
        }
        let cats = &mut self.nodes[at].categories;
        if !cats.contains(&category) {
            cats.push(category);
        }
    }

    fn collect(&self, token: &str, out: &mut Vec<usize>) {
        let mut at = 0usize;
        for c in token.chars() {
            match self.nodes[at].children.iter().find(|(k, _)| *k == c) {
                Some(&(_, next)) => at = next as usize,
                None => return,
            }
            out.extend(self.nodes[at].categories.iter().map(|&c| c as usize));
        }
    }
}

/// Named word categories, in file order.
#[derive(Debug, Clone)]
pub struct Lexicon {
    names: Arc<[String]>,
    patterns: Vec<Vec<Pattern>>,
    literals: HashMap<String, Vec<u16>>,
    stems: StemTrie,
}

impl Lexicon {
    /// The demo lexicon shipped with the crate.
    pub fn demo() -> Lexicon {
        parse_lexicon(DEMO_LEXICON).expect("bundled demo lexicon parses")
    }

    pub fn demo_source() -> &'static str {
        DEMO_LEXICON
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn patterns(&self, category: usize) -> &[Pattern] {
        &self.patterns[category]
    }

    /// Appends the indices of every category matching `token`, sorted and
    /// without duplicates. `token` is expected to be tokenizer output.
    pub fn match_indices(&self, token: &str, out: &mut Vec<usize>) {
        let start = out.len();
        if let Some(cats) = self.literals.get(token) {
            out.extend(cats.iter().map(|&c| c as usize));
        }
        self.stems.collect(token, out);
        let tail = &mut out[start..];
        tail.sort_unstable();
        let mut keep = 0;
        for i in 0..tail.len() {
            if i == 0 || tail[i] != tail[keep - 1] {
                tail[keep] = tail[i];
                keep += 1;
            }
        }
        out.truncate(start + keep);
    }

    /// Names of the categories containing `token`.
    pub fn match_token(&self, token: &str) -> BTreeSet<&str> {
        let mut idx = Vec::new();
        self.match_indices(token, &mut idx);
        idx.into_iter().map(|i| self.names[i].as_str()).collect()
    }

    /// Per-category match counts for already tokenized text.
    pub fn count_tokens<'t, I>(&self, tokens: I) -> CategoryCounts
    where
        I: IntoIterator<Item = &'t str>,
    {
        let mut counts = vec![0usize; self.len()];
        let mut token_count = 0;
        let mut scratch = Vec::new();
        for token in tokens {
            token_count += 1;
            scratch.clear();
            self.match_indices(token, &mut scratch);
            for &c in &scratch {
                counts[c] += 1;
            }
        }
        CategoryCounts {
            token_count,
            counts,
        }
    }

    pub fn count_text(&self, text: &str) -> CategoryCounts {
        let tokens = tokenize(text);
        self.count_tokens(tokens.iter().map(String::as_str))
    }

    /// Re-serialises the lexicon in the line format accepted by [`parse_lexicon`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, pats) in self.names.iter().zip(&self.patterns) {
            out.push_str(name);
            out.push_str(": ");
            let joined: Vec<String> = pats.iter().map(Pattern::to_string).collect();
            out.push_str(&joined.join(", "));
            out.push('\n');
        }
        out
    }
}

/// Raw per-category token counts for one document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryCounts {
    pub token_count: usize,
    pub counts: Vec<usize>,
}

impl CategoryCounts {
    pub fn proportion(&self, category: usize) -> f64 {
        if self.token_count == 0 {
            0.0
        } else {
            self.counts[category] as f64 / self.token_count as f64
        }
    }
}

/// Category proportions of one document, aligned with the lexicon order.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryProportions {
    names: Arc<[String]>,
    pub values: Vec<f64>,
    pub token_count: usize,
}

impl CategoryProportions {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.values[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.names
            .iter()
            .map(String::as_str)
            .zip(self.values.iter().copied())
    }
}

pub fn category_proportions(lexicon: &Lexicon, text: &str) -> CategoryProportions {
    let counts = lexicon.count_text(text);
    CategoryProportions {
        names: lexicon.names.clone(),
        values: (0..lexicon.len()).map(|c| counts.proportion(c)).collect(),
        token_count: counts.token_count,
    }
}

fn is_category_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_lowercase() || c == '_')
}

/// Parses the `category: pattern, pattern, ...` line format. Blank lines and
/// lines starting with `#` are ignored. Patterns are lowercased.
pub fn parse_lexicon(text: &str) -> Result<Lexicon> {
    let err = |line: usize, message: String| Error::Parse {
        context: "lexicon".into(),
        line,
        message,
    };

    let mut names: Vec<String> = Vec::new();
    let mut patterns: Vec<Vec<Pattern>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, rest) = line
            .split_once(':')
            .ok_or_else(|| err(line_no, "expected `category: pattern, ...`".into()))?;
        let name = name.trim();
        if !is_category_name(name) {
            return Err(err(
                line_no,
                format!("category name `{name}` must match [a-z_]+"),
            ));
        }
        if names.iter().any(|n| n == name) {
            return Err(err(line_no, format!("duplicate category `{name}`")));
        }
        let mut pats = Vec::new();
        for item in rest.split(',') {
            let item = item.trim().to_lowercase();
            if item.is_empty() {
                if rest.trim().is_empty() {
                    break;
                }
                return Err(err(line_no, "empty pattern".into()));
            }
            if item.chars().any(char::is_whitespace) {
                return Err(err(line_no, format!("pattern `{item}` contains whitespace")));
            }
            let (body, stem) = match item.strip_suffix('*') {
                Some(b) => (b.to_string(), true),
                None => (item.clone(), false),
            };
            if body.contains('*') {
                return Err(err(line_no, format!("pattern `{item}` has an interior `*`")));
            }
            if body.is_empty() {
                return Err(err(line_no, "bare `*` is not a pattern".into()));
            }
            pats.push(if stem {
                Pattern::Stem(body)
            } else {
                Pattern::Literal(body)
            });
        }
        if pats.is_empty() {
            return Err(err(line_no, format!("category `{name}` has no patterns")));
        }
        names.push(name.to_string());
        patterns.push(pats);
    }
    if names.len() > u16::MAX as usize {
        return Err(Error::InvalidInput("too many categories".into()));
    }

    let mut literals: HashMap<String, Vec<u16>> = HashMap::new();
    let mut stems = StemTrie::new();
    for (c, pats) in patterns.iter().enumerate() {
        let c = c as u16;
        for p in pats {
            match p {
                Pattern::Literal(w) => {
                    let entry = literals.entry(w.clone()).or_default();
                    if !entry.contains(&c) {
                        entry.push(c);
                    }
                }
                Pattern::Stem(s) => stems.insert(s, c),
            }
        }
    }
    Ok(Lexicon {
        names: names.into(),
        patterns,
        literals,
        stems,
    })
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Calls `f` with each token of `text`.
///
/// Text is lowercased first. A token is a maximal run of alphanumeric
/// characters, where an apostrophe with a letter on both sides stays inside
/// the token (`don't`). Typographic apostrophes are folded to `'`.
pub fn for_each_token(text: &str, mut f: impl FnMut(&str)) {
    let chars: Vec<char> = text
        .chars()
        .flat_map(char::to_lowercase)
        .map(|c| if is_apostrophe(c) { '\'' } else { c })
        .collect();
    let mut buf = String::new();
    let mut i = 0;
    while i < chars.len() {
        if !chars[i].is_alphanumeric() {
            i += 1;
            continue;
        }
        buf.clear();
        while i < chars.len() {
            let c = chars[i];
            let inner_apostrophe = c == '\''
                && i > 0
                && chars[i - 1].is_alphabetic()
                && chars.get(i + 1).is_some_and(|n| n.is_alphabetic());
            if c.is_alphanumeric() || inner_apostrophe {
                buf.push(c);
                i += 1;
            } else {
                break;
            }
        }
        f(&buf);
    }
}

pub fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    for_each_token(text, |t| out.push(t.to_string()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_literals_and_stems() {
        let lex = parse_lexicon("certainty: always, never, undeniab*").unwrap();
        assert_eq!(lex.names(), ["certainty"]);
        let pats = lex.patterns(0);
        assert_eq!(pats.iter().filter(|p| matches!(p, Pattern::Literal(_))).count(), 2);
        assert_eq!(pats[2], Pattern::Stem("undeniab".into()));
    }

    #[test]
    fn empty_input_and_comments() {
        assert!(parse_lexicon("").unwrap().is_empty());
        let lex = parse_lexicon("# header\n\n a: x \n# b: y\n").unwrap();
        assert_eq!(lex.names(), ["a"]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("a: x\na: y", 2, "duplicate"),
            ("a: x\n\nb:", 3, "no patterns"),
            ("a: th*nk", 1, "interior"),
            ("a: x,,y", 1, "empty pattern"),
            ("Bad: x", 1, "[a-z_]+"),
            ("a x y", 1, "expected"),
            ("a: *", 1, "bare"),
            ("a: two words", 1, "whitespace"),
        ];
        for (text, line, needle) in cases {
            match parse_lexicon(text) {
                Err(Error::Parse { line: l, message, .. }) => {
                    assert_eq!(l, line, "{text}");
                    assert!(message.contains(needle), "{text}: {message}");
                }
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn tokenizer_rules() {
        assert_eq!(tokenize("I don't KNOW."), ["i", "don't", "know"]);
        assert!(tokenize("").is_empty());
        assert_eq!(tokenize("win-win? :D"), ["win", "win", "d"]);
        assert_eq!(tokenize("'quoted' rock'n'roll 90's"), ["quoted", "rock'n'roll", "90", "s"]);
        assert_eq!(tokenize("it\u{2019}s Ünïcode"), ["it's", "ünïcode"]);
        assert_eq!(tokenize("end' 'start"), ["end", "start"]);
    }

    #[test]
    fn stem_and_literal_matching() {
        let lex = parse_lexicon("insight: think*\ncertainty: always\n").unwrap();
        assert_eq!(lex.match_token("thinking"), BTreeSet::from(["insight"]));
        assert_eq!(lex.match_token("think"), BTreeSet::from(["insight"]));
        assert!(lex.match_token("tank").is_empty());
        assert!(lex.match_token("thin").is_empty());
        assert_eq!(lex.match_token("always"), BTreeSet::from(["certainty"]));
    }

    #[test]
    fn token_in_several_categories_counts_once_each() {
        let lex = parse_lexicon("a: like, lik*\nb: like\n").unwrap();
        let counts = lex.count_text("like like");
        assert_eq!(counts.counts, [2, 2]);
    }

    #[test]
    fn proportions_arithmetic() {
        let lex = parse_lexicon("certainty: always, never\nother: zzz\n").unwrap();
        let p = category_proportions(&lex, "always a b c d e f g never h");
        assert_eq!(p.token_count, 10);
        assert_eq!(p.get("certainty"), Some(0.2));
        let empty = category_proportions(&lex, "");
        assert_eq!(empty.token_count, 0);
        assert!(empty.values.iter().all(|&v| v == 0.0));
        let full = category_proportions(&lex, "never always never");
        assert_eq!(full.get("certainty"), Some(1.0));
        assert_eq!(full.get("missing"), None);
    }

    #[test]
    fn demo_lexicon_is_disjoint() {
        let lex = Lexicon::demo();
        assert_eq!(lex.len(), 18);
        for c in 0..lex.len() {
            for p in lex.patterns(c) {
                let hits = lex.match_token(p.text());
                assert_eq!(
                    hits,
                    BTreeSet::from([lex.names()[c].as_str()]),
                    "pattern {p} of {}",
                    lex.names()[c]
                );
            }
        }
    }

    #[test]
    fn to_text_round_trips() {
        let lex = Lexicon::demo();
        let again = parse_lexicon(&lex.to_text()).unwrap();
        assert_eq!(again.names(), lex.names());
        for c in 0..lex.len() {
            assert_eq!(again.patterns(c), lex.patterns(c));
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn naive_match(lex: &Lexicon, token: &str) -> BTreeSet<String> {
            let mut out = BTreeSet::new();
            for (c, pats) in lex.patterns.iter().enumerate() {
                for p in pats {
                    let hit = match p {
                        Pattern::Literal(w) => w == token,
                        Pattern::Stem(s) => token.starts_with(s.as_str()),
                    };
                    if hit {
                        out.insert(lex.names()[c].clone());
                    }
                }
            }
            out
        }

        fn small_lexicon() -> impl Strategy<Value = String> {
            proptest::collection::vec(
                proptest::collection::vec(("[abc]{1,4}", any::<bool>()), 1..6),
                1..5,
            )
            .prop_map(|cats| {
                cats.iter()
                    .enumerate()
                    .map(|(i, pats)| {
                        let pats: Vec<String> = pats
                            .iter()
                            .map(|(w, stem)| if *stem { format!("{w}*") } else { w.clone() })
                            .collect();
                        format!("c_{}: {}\n", "x".repeat(i + 1), pats.join(", "))
                    })
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn trie_matches_naive_scan(src in small_lexicon(), tokens in proptest::collection::vec("[abc]{1,6}", 1..30)) {
                let lex = parse_lexicon(&src).unwrap();
                for t in &tokens {
                    let fast: BTreeSet<String> = lex.match_token(t).into_iter().map(String::from).collect();
                    prop_assert_eq!(fast, naive_match(&lex, t));
                }
            }

            #[test]
            fn demo_trie_matches_naive_scan(tokens in proptest::collection::vec("[a-z']{1,12}", 1..40)) {
                let lex = Lexicon::demo();
                for t in &tokens {
                    let fast: BTreeSet<String> = lex.match_token(t).into_iter().map(String::from).collect();
                    prop_assert_eq!(fast, naive_match(&lex, t));
                }
            }

            #[test]
            fn tokenize_is_idempotent_under_rejoin(text in any::<String>()) {
                let once = tokenize(&text);
                let twice = tokenize(&once.join(" "));
                prop_assert_eq!(&once, &twice);
                prop_assert_eq!(once, tokenize(&text));
            }

            #[test]
            fn proportions_bounded_and_doubling_invariant(words in proptest::collection::vec("[a-z]{1,8}|always|never|think|you", 0..40)) {
                let lex = Lexicon::demo();
                let text = words.join(" ");
                let p = category_proportions(&lex, &text);
                prop_assert!(p.values.iter().all(|&v| (0.0..=1.0).contains(&v)));
                let doubled = category_proportions(&lex, &format!("{text} {text}"));
                for (a, b) in p.values.iter().zip(&doubled.values) {
                    prop_assert!((a - b).abs() < 1e-15);
                }
            }
        }
    }
}
