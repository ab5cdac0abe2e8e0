//! Smith-Waterman local alignment over token sequences, used to strip quoted
//! text from threaded comments.
//!
//! Each non-OP comment is aligned against the original post's already-cleaned
//! text and then against its immediately preceding cleaned comment. The single
//! largest matching span per reference is removed when it reaches the minimum
//! match length.

use serde::{Deserialize, Serialize};

use crate::corpus::Document;

/// Scoring scheme for local alignment. `min_match_tokens` is the floor below
/// which a best span is ignored, preventing removal of common short phrases.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlignmentScoring {
    pub match_score: i64,
    pub mismatch_penalty: i64,
    pub gap_penalty: i64,
    pub min_match_tokens: usize,
}

impl Default for AlignmentScoring {
    fn default() -> Self {
        AlignmentScoring { match_score: 2, mismatch_penalty: -1, gap_penalty: -1, min_match_tokens: 5 }
    }
}

impl AlignmentScoring {
    pub fn validate(&self) -> Result<(), String> {
        if self.match_score <= 0 {
            return Err("match_score must be positive".into());
        }
        if self.mismatch_penalty > 0 || self.gap_penalty > 0 {
            return Err("mismatch and gap penalties must be <= 0".into());
        }
        if self.min_match_tokens < 1 {
            return Err("min_match_tokens must be >= 1".into());
        }
        Ok(())
    }
}

/// A local alignment between a target and a reference. Index ranges are
/// half-open token spans; `matched_tokens` counts exact-match positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentSpan {
    pub target_start: usize,
    pub target_end: usize,
    pub reference_start: usize,
    pub reference_end: usize,
    pub score: i64,
    pub matched_tokens: usize,
}

impl AlignmentSpan {
    pub fn empty() -> Self {
        AlignmentSpan {
            target_start: 0,
            target_end: 0,
            reference_start: 0,
            reference_end: 0,
            score: 0,
            matched_tokens: 0,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.score == 0
    }
}

/// Maximal-score local alignment of `target` against `reference`. Ties among
/// maximal cells are broken by earlier target start, then earlier reference
/// start. Returns an empty span with score 0 when no positive-scoring
/// alignment exists.
pub fn sw_align<T: PartialEq>(
    target: &[T],
    reference: &[T],
    scoring: &AlignmentScoring,
) -> AlignmentSpan {
    let n = target.len();
    let m = reference.len();
    if n == 0 || m == 0 {
        return AlignmentSpan::empty();
    }

    // h[i][j] = best local alignment score ending at target[i-1], reference[j-1]
    let mut h = vec![vec![0i64; m + 1]; n + 1];
    let mut best = 0i64;
    for i in 1..=n {
        for j in 1..=m {
            let sub = if target[i - 1] == reference[j - 1] {
                scoring.match_score
            } else {
                scoring.mismatch_penalty
            };
            let score = (h[i - 1][j - 1] + sub)
                .max(h[i - 1][j] + scoring.gap_penalty)
                .max(h[i][j - 1] + scoring.gap_penalty)
                .max(0);
            h[i][j] = score;
            if score > best {
                best = score;
            }
        }
    }
    if best == 0 {
        return AlignmentSpan::empty();
    }

    let mut chosen: Option<AlignmentSpan> = None;
    for i in 1..=n {
        for j in 1..=m {
            if h[i][j] != best {
                continue;
            }
            let span = traceback(&h, target, reference, scoring, i, j);
            let better = match &chosen {
                None => true,
                Some(c) => {
                    (span.target_start, span.reference_start) < (c.target_start, c.reference_start)
                }
            };
            if better {
                chosen = Some(span);
            }
        }
    }
    chosen.unwrap()
}

fn traceback<T: PartialEq>(
    h: &[Vec<i64>],
    target: &[T],
    reference: &[T],
    scoring: &AlignmentScoring,
    end_i: usize,
    end_j: usize,
) -> AlignmentSpan {
    let (mut i, mut j) = (end_i, end_j);
    let mut matched = 0usize;
    while i > 0 && j > 0 && h[i][j] > 0 {
        let sub = if target[i - 1] == reference[j - 1] {
            scoring.match_score
        } else {
            scoring.mismatch_penalty
        };
        if h[i][j] == h[i - 1][j - 1] + sub {
            if target[i - 1] == reference[j - 1] {
                matched += 1;
            }
            i -= 1;
            j -= 1;
        } else if h[i][j] == h[i - 1][j] + scoring.gap_penalty {
            i -= 1;
        } else {
            j -= 1;
        }
    }
    AlignmentSpan {
        target_start: i,
        target_end: end_i,
        reference_start: j,
        reference_end: end_j,
        score: h[end_i][end_j],
        matched_tokens: matched,
    }
}

/// One entry of the cleaning report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CleanEvent {
    pub doc_id: String,
    pub tokens_removed: usize,
    pub dropped: bool,
}

fn whitespace_tokens(text: &str) -> Vec<String> {
    text.split_whitespace().map(|s| s.to_string()).collect()
}

/// Cleans one discussion thread. `thread` must be in chronological order with
/// the original post first. Each comment is aligned against the cleaned OP and
/// then its immediately preceding cleaned comment (or every surviving
/// predecessor when `all_predecessors` is set); at most one span is removed
/// per reference. Comments reduced below 3 tokens are dropped. The OP is
/// never modified.
pub fn strip_quoted_text(
    thread: &[Document],
    scoring: &AlignmentScoring,
    all_predecessors: bool,
) -> (Vec<Document>, Vec<CleanEvent>) {
    if thread.len() <= 1 {
        return (thread.to_vec(), Vec::new());
    }

    let mut survivors: Vec<Document> = vec![thread[0].clone()];
    let mut survivor_tokens: Vec<Vec<String>> = vec![whitespace_tokens(&thread[0].text)];
    let mut events = Vec::new();

    for comment in &thread[1..] {
        let mut tokens = whitespace_tokens(&comment.text);
        let mut removed = 0usize;

        // Reference order: OP first, then predecessors (immediate one only by
        // default). Indices into survivors; deduplicated so a comment whose
        // predecessor is the OP aligns against it once.
        let mut ref_indices: Vec<usize> = vec![0];
        if all_predecessors {
            ref_indices.extend(1..survivors.len());
        } else if survivors.len() > 1 {
            ref_indices.push(survivors.len() - 1);
        }

        for ri in ref_indices {
            let span = sw_align(&tokens, &survivor_tokens[ri], scoring);
            if span.matched_tokens >= scoring.min_match_tokens {
                removed += span.target_end - span.target_start;
                tokens.drain(span.target_start..span.target_end);
            }
        }

        if tokens.len() < 3 {
            events.push(CleanEvent {
                doc_id: comment.id.clone(),
                tokens_removed: removed,
                dropped: true,
            });
            continue;
        }
        if removed > 0 {
            events.push(CleanEvent {
                doc_id: comment.id.clone(),
                tokens_removed: removed,
                dropped: false,
            });
        }
        let mut cleaned = comment.clone();
        cleaned.text = tokens.join(" ");
        survivors.push(cleaned);
        survivor_tokens.push(tokens);
    }

    (survivors, events)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(|t| t.to_string()).collect()
    }

    fn default_scoring() -> AlignmentScoring {
        AlignmentScoring::default()
    }

    #[test]
    fn self_alignment_covers_everything() {
        let t = toks("a b c d e");
        let span = sw_align(&t, &t, &default_scoring());
        assert_eq!(span.target_start, 0);
        assert_eq!(span.target_end, 5);
        assert_eq!(span.score, 5 * 2);
        assert_eq!(span.matched_tokens, 5);
    }

    #[test]
    fn disjoint_vocabulary_scores_zero() {
        let span = sw_align(&toks("a b c"), &toks("x y z"), &default_scoring());
        assert_eq!(span.score, 0);
        assert!(span.is_empty());
    }

    #[test]
    fn embedded_quote_is_located() {
        // Full-matrix hand computation: the 4-token run scores 4*2 = 8.
        let target = toks("p q the range anxiety point r");
        let reference = toks("the range anxiety point");
        let span = sw_align(&target, &reference, &default_scoring());
        assert_eq!(span.target_start, 2);
        assert_eq!(span.target_end, 6);
        assert_eq!(span.score, 8);
        assert_eq!(span.matched_tokens, 4);
    }

    #[test]
    fn empty_input_gives_empty_span() {
        let empty: Vec<String> = Vec::new();
        let span = sw_align(&empty, &toks("a b"), &default_scoring());
        assert_eq!(span, AlignmentSpan::empty());
    }

    #[test]
    fn score_is_symmetric() {
        let a = toks("one two three four five");
        let b = toks("zero two three seven five six");
        let s = default_scoring();
        assert_eq!(sw_align(&a, &b, &s).score, sw_align(&b, &a, &s).score);
    }

    #[test]
    fn tie_break_prefers_earlier_target_start() {
        // "a b" appears twice in the target; the earlier occurrence wins.
        let target = toks("a b x x a b");
        let reference = toks("a b");
        let span = sw_align(&target, &reference, &default_scoring());
        assert_eq!(span.target_start, 0);
        assert_eq!(span.target_end, 2);
    }

    fn doc(id: &str, text: &str) -> Document {
        let mut d = Document::new(id, "comments", text);
        d.thread_id = Some("t".into());
        d
    }

    #[test]
    fn verbatim_copy_of_op_is_dropped() {
        let op = doc("op", "the model three has great range and handling");
        let copy = doc("c1", "the model three has great range and handling");
        let (cleaned, events) = strip_quoted_text(&[op, copy], &default_scoring(), false);
        assert_eq!(cleaned.len(), 1);
        assert_eq!(events.len(), 1);
        assert!(events[0].dropped);
    }

    #[test]
    fn below_threshold_comment_is_unchanged() {
        let op = doc("op", "the model three has great range and handling overall");
        let c = doc("c1", "my commute got much cheaper since switching over");
        let (cleaned, events) = strip_quoted_text(&[op, c.clone()], &default_scoring(), false);
        assert_eq!(cleaned.len(), 2);
        assert_eq!(cleaned[1].text, c.text);
        assert!(events.is_empty());
    }

    #[test]
    fn single_document_thread_unchanged() {
        let op = doc("op", "alone in the thread");
        let (cleaned, events) = strip_quoted_text(&[op.clone()], &default_scoring(), false);
        assert_eq!(cleaned.len(), 1);
        assert_eq!(cleaned[0].text, op.text);
        assert!(events.is_empty());
    }

    #[test]
    fn nested_quotes_removed_once() {
        // Comment 2 quotes the OP; comment 3 quotes comment 2's own words.
        // Cleaning comment 2 first means comment 3 only loses the comment-2
        // quote, with no double removal.
        let op = doc("op", "charging at home overnight costs far less than gasoline ever did");
        let c2 = doc(
            "c2",
            "charging at home overnight costs far less than gasoline ever did \
             agreed and the maintenance savings are real too honestly",
        );
        let c3 = doc(
            "c3",
            "agreed and the maintenance savings are real too honestly \
             yes plus no oil changes needed at all anymore",
        );
        let (cleaned, _) = strip_quoted_text(&[op.clone(), c2, c3], &default_scoring(), false);
        assert_eq!(cleaned.len(), 3);
        assert_eq!(cleaned[0].text, op.text);
        assert_eq!(cleaned[1].text, "agreed and the maintenance savings are real too honestly");
        assert_eq!(cleaned[2].text, "yes plus no oil changes needed at all anymore");
    }

    #[test]
    fn op_is_never_modified_and_counts_never_grow() {
        let op = doc("op", "winter range drops about twenty percent in cold weather");
        let c1 = doc(
            "c1",
            "winter range drops about twenty percent in cold weather but preheating the battery helps quite a bit",
        );
        let before: Vec<usize> =
            [&op, &c1].iter().map(|d| d.text.split_whitespace().count()).collect();
        let (cleaned, _) = strip_quoted_text(&[op.clone(), c1], &default_scoring(), false);
        assert_eq!(cleaned[0].text, op.text);
        for (d, b) in cleaned.iter().zip(before) {
            assert!(d.text.split_whitespace().count() <= b);
        }
    }

    #[test]
    fn removal_makes_progress() {
        let reference = toks("the quick brown fox jumps over the lazy dog");
        let target = toks("well the quick brown fox jumps over the lazy dog indeed said someone");
        let s = default_scoring();
        let span = sw_align(&target, &reference, &s);
        assert!(span.matched_tokens >= s.min_match_tokens);
        let mut remaining = target.clone();
        remaining.drain(span.target_start..span.target_end);
        let again = sw_align(&remaining, &reference, &s);
        assert!(again.matched_tokens < span.matched_tokens);
    }
}
