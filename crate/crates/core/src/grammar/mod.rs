//! AB categorial grammar: tokenization against a lexicon and a CYK parser
//! that returns every derivation built from forward and backward
//! application.

mod cat;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::lexicon::Lexicon;

pub use cat::{Atom, Cat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrammarError {
    #[error("unknown token `{token}` at position {position}")]
    UnknownToken { token: String, position: usize },
    #[error("no derivation of category s")]
    NoParse,
}

/// A lexical item found in the input: one or more words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// The lexicon form matched, one string per word.
    pub form: Vec<String>,
    /// Index of the first word in the sentence, from 0.
    pub start: usize,
}

impl Token {
    pub fn text(&self) -> String {
        self.form.join(" ")
    }
}

/// Splits a sentence into lexicon items, leftmost-longest. A trailing `.`
/// is dropped. Words match exactly, or failing that case-insensitively.
pub fn tokenize(sentence: &str, lex: &Lexicon) -> Result<Vec<Token>, GrammarError> {
    let trimmed = sentence.trim().trim_end_matches('.').trim_end();
    let words: Vec<&str> = trimmed.split_whitespace().collect();
    let max = lex.max_form_len().max(1);
    let mut out = Vec::new();
    let mut i = 0;
    while i < words.len() {
        let mut found = None;
        for len in (1..=max.min(words.len() - i)).rev() {
            let span = &words[i..i + len];
            if !lex.lookup(span).is_empty() {
                found = Some(span.iter().map(|w| w.to_string()).collect());
            } else {
                found = lex
                    .forms()
                    .filter(|f| {
                        f.len() == len && f.iter().zip(span).all(|(a, b)| a.to_lowercase() == b.to_lowercase())
                    })
                    .min()
                    .cloned();
            }
            if found.is_some() {
                break;
            }
        }
        match found {
            Some(form) => {
                let len = form.len();
                out.push(Token { form, start: i });
                i += len;
            }
            None => {
                return Err(GrammarError::UnknownToken {
                    token: words[i].to_string(),
                    position: i + 1,
                })
            }
        }
    }
    Ok(out)
}

/// A derivation. Leaves refer to a token by position and to a lexicon
/// entry by index into [`Lexicon::entries`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tree {
    Leaf {
        token: usize,
        entry: usize,
        text: String,
        cat: Cat,
    },
    /// `A/B  B => A`
    Forward {
        cat: Cat,
        functor: Arc<Tree>,
        arg: Arc<Tree>,
    },
    /// `B  B\A => A`
    Backward {
        cat: Cat,
        arg: Arc<Tree>,
        functor: Arc<Tree>,
    },
}

impl Tree {
    pub fn cat(&self) -> &Cat {
        match self {
            Tree::Leaf { cat, .. } | Tree::Forward { cat, .. } | Tree::Backward { cat, .. } => cat,
        }
    }

    /// Token positions covered, as a half-open range.
    pub fn span(&self) -> (usize, usize) {
        match self {
            Tree::Leaf { token, .. } => (*token, token + 1),
            Tree::Forward { functor, arg, .. } => (functor.span().0, arg.span().1),
            Tree::Backward { arg, functor, .. } => (arg.span().0, functor.span().1),
        }
    }

    /// Whether every node obeys its application rule.
    pub fn is_sound(&self) -> bool {
        match self {
            Tree::Leaf { .. } => true,
            Tree::Forward { cat, functor, arg } => {
                functor.cat().apply_forward(arg.cat()) == Some(cat) && functor.is_sound() && arg.is_sound()
            }
            Tree::Backward { cat, arg, functor } => {
                functor.cat().apply_backward(arg.cat()) == Some(cat) && functor.is_sound() && arg.is_sound()
            }
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf { text, .. } => f.write_str(text),
            Tree::Forward { functor, arg, .. } => write!(f, "({functor} {arg})"),
            Tree::Backward { arg, functor, .. } => write!(f, "({arg} {functor})"),
        }
    }
}

/// All derivations of every category over the tokens, by CYK.
/// `chart[i][j]` holds the trees for tokens `i..j`.
fn chart(tokens: &[Token], lex: &Lexicon) -> Vec<Vec<Vec<Arc<Tree>>>> {
    let n = tokens.len();
    let mut chart: Vec<Vec<Vec<Arc<Tree>>>> = vec![vec![Vec::new(); n + 1]; n + 1];
    for (i, tok) in tokens.iter().enumerate() {
        for entry in lex.lookup(&tok.form) {
            let index = lex.entry_index(entry).expect("entry from this lexicon");
            chart[i][i + 1].push(Arc::new(Tree::Leaf {
                token: i,
                entry: index,
                text: tok.text(),
                cat: entry.cat.clone(),
            }));
        }
    }
    for width in 2..=n {
        for i in 0..=n - width {
            let j = i + width;
            let mut cell = Vec::new();
            #[allow(clippy::needless_range_loop)]
            for k in i + 1..j {
                for left in &chart[i][k] {
                    for right in &chart[k][j] {
                        if let Some(cat) = left.cat().apply_forward(right.cat()) {
                            cell.push(Arc::new(Tree::Forward {
                                cat: cat.clone(),
                                functor: left.clone(),
                                arg: right.clone(),
                            }));
                        }
                        if let Some(cat) = right.cat().apply_backward(left.cat()) {
                            cell.push(Arc::new(Tree::Backward {
                                cat: cat.clone(),
                                arg: left.clone(),
                                functor: right.clone(),
                            }));
                        }
                    }
                }
            }
            chart[i][j] = cell;
        }
    }
    chart
}

/// All derivations of category `target` over the whole input.
pub fn parse_as(tokens: &[Token], lex: &Lexicon, target: &Cat) -> Vec<Arc<Tree>> {
    if tokens.is_empty() {
        return Vec::new();
    }
    let mut chart = chart(tokens, lex);
    std::mem::take(&mut chart[0][tokens.len()])
        .into_iter()
        .filter(|t| t.cat() == target)
        .collect()
}

/// All derivations of `s`, in a fixed order: split point, then rule
/// (forward before backward), then entry index.
pub fn parse(tokens: &[Token], lex: &Lexicon) -> Result<Vec<Arc<Tree>>, GrammarError> {
    let trees = parse_as(tokens, lex, &Cat::S);
    if trees.is_empty() {
        Err(GrammarError::NoParse)
    } else {
        Ok(trees)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn forms(tokens: &[Token]) -> Vec<String> {
        tokens.iter().map(Token::text).collect()
    }

    #[test]
    fn tokenizes_coordination() {
        let lex = Lexicon::english();
        let toks = tokenize("Jimi and Dusty met.", &lex).unwrap();
        assert_eq!(forms(&toks), ["Jimi", "and", "Dusty", "met"]);
    }

    #[test]
    fn multi_word_items_are_one_token() {
        let lex = Lexicon::english();
        let toks = tokenize("Jimi and Dusty wrote a paper", &lex).unwrap();
        assert_eq!(forms(&toks), ["Jimi", "and", "Dusty", "wrote a paper"]);
        assert_eq!(toks[3].start, 3);
    }

    #[test]
    fn unknown_word_position() {
        let lex = Lexicon::english();
        assert_eq!(
            tokenize("Jimi blorped", &lex),
            Err(GrammarError::UnknownToken {
                token: "blorped".into(),
                position: 2
            })
        );
    }

    #[test]
    fn case_fallback() {
        let lex = Lexicon::english();
        let toks = tokenize("The students met", &lex).unwrap();
        assert_eq!(forms(&toks), ["the", "students", "met"]);
    }

    #[test]
    fn coordination_has_one_derivation() {
        let lex = Lexicon::english();
        let toks = tokenize("Jimi and Dusty met", &lex).unwrap();
        let trees = parse(&toks, &lex).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].to_string(), "((Jimi (and Dusty)) met)");
        assert!(trees[0].is_sound());
    }

    #[test]
    fn each_student_met_parses() {
        let lex = Lexicon::english();
        let toks = tokenize("each student met", &lex).unwrap();
        let trees = parse(&toks, &lex).unwrap();
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].to_string(), "((each student) met)");
    }

    #[test]
    fn verb_first_is_no_parse() {
        let lex = Lexicon::english();
        let toks = tokenize("met Jimi", &lex).unwrap();
        assert_eq!(parse(&toks, &lex), Err(GrammarError::NoParse));
    }
}
