use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::SchError;
use crate::geometry::{ExtScalar, LittleDisc};
use crate::operad_core::{MultiHom, Part};
use crate::perm::Perm;
use crate::trees::{compose_levels, is_relabeling, Level, LevelSequence};

/// Which side of `ι: SC^{h∞} → WSC^h` an object lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `SC^{h∞}(n, ·)`
    S,
    /// `WSC^h(n, ·)`
    W,
}

/// An object `S_n` or `W_n` that a word passes through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Obj {
    pub side: Side,
    pub n: usize,
}

impl Obj {
    pub fn s(n: usize) -> Self {
        Obj { side: Side::S, n }
    }

    pub fn w(n: usize) -> Self {
        Obj { side: Side::W, n }
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = if self.side == Side::S { "S" } else { "W" };
        write!(f, "{side}{}", self.n)
    }
}

/// A letter of a word.
///
/// `Iota: S_n → W_n`, `P: W_n → S_n`, `H: W_n → W_n`, and `Act(α)` for
/// `α ∈ E_d(b; a)` maps `W_a → W_b` (relabelings also act on `S_a`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Token {
    Iota,
    P,
    H { t: ExtScalar },
    Act { level: Level },
}

/// A composable word read left to right: the first letter is applied first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FormalWord {
    pub dom: Obj,
    pub cod: Obj,
    pub tokens: Vec<Token>,
}

fn step(obj: Obj, token: &Token) -> Result<Obj, SchError> {
    let bad = || SchError::Word(format!("{token:?} cannot follow object {obj}"));
    match token {
        Token::Iota if obj.side == Side::S => Ok(Obj::w(obj.n)),
        Token::P if obj.side == Side::W => Ok(Obj::s(obj.n)),
        Token::H { .. } if obj.side == Side::W => Ok(obj),
        Token::Act { level } => {
            if level.n_outputs() != obj.n || (obj.side == Side::S && !is_relabeling(level)) {
                return Err(bad());
            }
            Ok(Obj { side: obj.side, n: level.n_inputs() })
        }
        _ => Err(bad()),
    }
}

impl FormalWord {
    /// Types the letters starting from `dom`.
    pub fn new(dom: Obj, tokens: Vec<Token>) -> Result<Self, SchError> {
        let mut cod = dom;
        for t in &tokens {
            cod = step(cod, t)?;
        }
        Ok(FormalWord { dom, cod, tokens })
    }

    pub fn empty(dom: Obj) -> Self {
        FormalWord { dom, cod: dom, tokens: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Rechecks the stored codomain against the letters.
    pub fn check(&self) -> Result<(), SchError> {
        let typed = FormalWord::new(self.dom, self.tokens.clone())?;
        if typed.cod != self.cod {
            return Err(SchError::Word(format!("codomain is {}, not {}", typed.cod, self.cod)));
        }
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &FormalWord) -> Result<FormalWord, SchError> {
        if self.cod != other.dom {
            return Err(SchError::Word(format!("cannot follow {} by a word from {}", self.cod, other.dom)));
        }
        let mut tokens = self.tokens.clone();
        tokens.extend(other.tokens.iter().cloned());
        Ok(FormalWord { dom: self.dom, cod: other.cod, tokens })
    }
}

impl fmt::Display for FormalWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return write!(f, "ε");
        }
        let parts: Vec<String> = self
            .tokens
            .iter()
            .map(|t| match t {
                Token::Iota => "ι".to_string(),
                Token::P => "p".to_string(),
                Token::H { t } => format!("h[{t}]"),
                Token::Act { level } => format!("act({}→{})", level.n_outputs(), level.n_inputs()),
            })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

/// The chain `ι·act(α₁)·h_{t₁}·…·h_{t_k}·act(α_{k+1})·p` of a level
/// sequence, from `S_target` to `S_source`. The identity sequence gives the
/// empty word.
pub fn chain_from_le(s: &LevelSequence) -> FormalWord {
    if s.labels.is_empty() {
        return FormalWord::empty(Obj::s(s.target));
    }
    let mut tokens = vec![Token::Iota];
    for (i, level) in s.labels.iter().enumerate() {
        if i > 0 {
            tokens.push(Token::H { t: s.lengths[i - 1].clone() });
        }
        tokens.push(Token::Act { level: level.clone() });
    }
    tokens.push(Token::P);
    FormalWord { dom: Obj::s(s.target), cod: Obj::s(s.source), tokens }
}

/// Replaces every `h_t` by `h_{min(s, t)}`.
pub fn clamp(s: &ExtScalar, w: &FormalWord) -> FormalWord {
    let tokens = w
        .tokens
        .iter()
        .map(|t| match t {
            Token::H { t } => Token::H { t: t.clone().min(s.clone()) },
            other => other.clone(),
        })
        .collect();
    FormalWord { dom: w.dom, cod: w.cod, tokens }
}

#[derive(Clone, Copy, Debug)]
enum Redex {
    /// `h_0 → ε`
    HZero(usize),
    /// `h_∞ → p·ι`
    HInf(usize),
    /// `ι·p → ε`
    Retract(usize),
    /// `act(id) → ε`
    DropIdentity(usize),
    /// `act(α)·act(β) → act(α∘β)`
    Merge(usize),
    /// `x·act(σ) → act(σ)·x` for a relabeling `σ` and `x ∈ {ι, p, h_t}`
    Slide(usize),
}

fn is_identity_level(level: &Level) -> bool {
    is_relabeling(level) && level.parts.iter().enumerate().all(|(j, p)| p.inputs == [j])
}

fn redexes(tokens: &[Token]) -> Vec<Redex> {
    let mut out = Vec::new();
    for (i, t) in tokens.iter().enumerate() {
        match t {
            Token::H { t } if t.is_zero() => out.push(Redex::HZero(i)),
            Token::H { t } if t.is_inf() => out.push(Redex::HInf(i)),
            Token::Act { level } if is_identity_level(level) => out.push(Redex::DropIdentity(i)),
            _ => {}
        }
        let Some(next) = tokens.get(i + 1) else { continue };
        match (t, next) {
            (Token::Iota, Token::P) => out.push(Redex::Retract(i)),
            (Token::Act { .. }, Token::Act { .. }) => out.push(Redex::Merge(i)),
            (Token::Iota | Token::P | Token::H { .. }, Token::Act { level }) if is_relabeling(level) => {
                out.push(Redex::Slide(i))
            }
            _ => {}
        }
    }
    out
}

fn apply(tokens: &[Token], r: Redex) -> Result<Vec<Token>, SchError> {
    let mut out = tokens.to_vec();
    match r {
        Redex::HZero(i) | Redex::DropIdentity(i) => {
            out.remove(i);
        }
        Redex::HInf(i) => {
            out.splice(i..=i, [Token::P, Token::Iota]);
        }
        Redex::Retract(i) => {
            out.drain(i..=i + 1);
        }
        Redex::Merge(i) => {
            let (Token::Act { level: a }, Token::Act { level: b }) = (&tokens[i], &tokens[i + 1]) else {
                unreachable!("merge redex on two actions")
            };
            let level = compose_levels(a, b)?;
            out.splice(i..=i + 1, [Token::Act { level }]);
        }
        Redex::Slide(i) => out.swap(i, i + 1),
    }
    Ok(out)
}

/// Renames the objects after each action by the disc they feed (output part,
/// then disc data); the object after the last action is renamed only when
/// `free_end`. Returns the renaming of the end object.
fn canonical(tokens: &mut [Token], end: usize, free_end: bool) -> Perm {
    let acts: Vec<usize> =
        tokens.iter().enumerate().filter(|(_, t)| matches!(t, Token::Act { .. })).map(|(i, _)| i).collect();
    let mut end_renaming = Perm::identity(end);
    for (k, &i) in acts.iter().enumerate() {
        let next = acts.get(k + 1).copied();
        if next.is_none() && !free_end {
            break;
        }
        let Token::Act { level } = &tokens[i] else { unreachable!() };
        let mut keys: Vec<(usize, &LittleDisc, usize)> = Vec::new();
        for (j, p) in level.parts.iter().enumerate() {
            for (pos, &m) in p.inputs.iter().enumerate() {
                keys.push((j, &p.elem.discs[pos], m));
            }
        }
        keys.sort();
        let mut rank = vec![0usize; keys.len()];
        for (r, (_, _, m)) in keys.iter().enumerate() {
            rank[*m] = r;
        }
        if let Token::Act { level } = &mut tokens[i] {
            for p in &mut level.parts {
                for m in &mut p.inputs {
                    *m = rank[*m];
                }
            }
        }
        match next {
            Some(n) => {
                if let Token::Act { level } = &mut tokens[n] {
                    let mut parts = level.parts.clone();
                    for (m, p) in level.parts.iter().enumerate() {
                        parts[rank[m]] = p.clone();
                    }
                    level.parts = parts;
                }
            }
            None => end_renaming = Perm(rank),
        }
    }
    for t in tokens.iter_mut() {
        if let Token::Act { level } = t {
            let parts = level.parts.iter().map(crate::trees::sort_part).collect();
            *level = MultiHom { parts };
        }
    }
    end_renaming
}

fn rewrite(
    w: &FormalWord,
    free_end: bool,
    pick: &mut dyn FnMut(usize) -> usize,
) -> Result<(FormalWord, Perm), SchError> {
    w.check()?;
    let mut tokens = w.tokens.clone();
    let mut renaming = Perm::identity(w.cod.n);
    loop {
        let rs = redexes(&tokens);
        if rs.is_empty() {
            let p = canonical(&mut tokens, w.cod.n, free_end);
            renaming = p.compose(&renaming);
            if redexes(&tokens).is_empty() {
                return Ok((FormalWord { dom: w.dom, cod: w.cod, tokens }, renaming));
            }
            continue;
        }
        tokens = apply(&tokens, rs[pick(rs.len())])?;
    }
}

/// Normal form under `h_0 = id`, `h_∞ = ιp` (written `p·ι` left to right),
/// `pι = id` (written `ι·p`), deletion of identity actions, merging of
/// adjacent actions, and sliding relabelings towards the front; the objects
/// strictly inside the word are then renamed canonically.
pub fn word_normalize(w: &FormalWord) -> Result<FormalWord, SchError> {
    Ok(rewrite(w, false, &mut |_| 0)?.0)
}

/// [`word_normalize`] firing a random redex at each step.
pub fn word_normalize_random<R: Rng + ?Sized>(w: &FormalWord, rng: &mut R) -> Result<FormalWord, SchError> {
    Ok(rewrite(w, false, &mut |n| rng.gen_range(0..n))?.0)
}

/// Normal form where the end object may be renamed too; returns the renaming
/// (old end label `i` becomes `π(i)`).
pub(crate) fn word_normalize_free_end(w: &FormalWord) -> Result<(FormalWord, Perm), SchError> {
    rewrite(w, true, &mut |_| 0)
}

/// Splits a word starting at `S_n` (whose letters act output by output) into
/// `n` words from `S_1`, each with the end labels it reaches, in increasing
/// order.
pub(crate) fn word_components(w: &FormalWord) -> Vec<(FormalWord, Vec<usize>)> {
    (0..w.dom.n)
        .map(|o| {
            let mut reached = vec![o];
            let mut tokens = Vec::with_capacity(w.tokens.len());
            for t in &w.tokens {
                match t {
                    Token::Act { level } => {
                        let mut next: Vec<usize> =
                            reached.iter().flat_map(|&m| level.parts[m].inputs.clone()).collect();
                        next.sort_unstable();
                        let rename = |x: usize| next.binary_search(&x).expect("reached object");
                        let parts = reached
                            .iter()
                            .map(|&m| {
                                let p = &level.parts[m];
                                Part { inputs: p.inputs.iter().map(|&x| rename(x)).collect(), elem: p.elem.clone() }
                            })
                            .collect();
                        tokens.push(Token::Act { level: MultiHom { parts } });
                        reached = next;
                    }
                    other => tokens.push(other.clone()),
                }
            }
            let word = FormalWord::new(Obj { side: w.dom.side, n: 1 }, tokens).expect("components stay typed");
            (word, reached)
        })
        .collect()
}
