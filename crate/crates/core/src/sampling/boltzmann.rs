use std::io::Write;

use rand::Rng;
use rug::Float;
use serde::Serialize;

use super::{SampleError, Tuning};
use crate::counting::Grammar;
use crate::family::Family;
use crate::radicals::{eval_chain, find_rho, format_sig, ChainValue, RadicalChain, RadicalError};
use crate::terms::{Binder, Node, Term};

/// Branch probabilities must sum to one within `2^-PROBABILITY_TOLERANCE_BITS`.
pub const PROBABILITY_TOLERANCE_BITS: u32 = 100;

/// The three branch probabilities of one Boltzmann state.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelProbabilities {
    /// Context size: enclosing abstractions for lambda families, remaining
    /// height for Motzkin families.
    pub level: usize,
    pub p_stop: Float,
    pub p_unary: Float,
    pub p_binary: Float,
}

impl LevelProbabilities {
    pub fn sum(&self) -> Float {
        Float::with_val(self.p_stop.prec(), &self.p_stop + &self.p_unary) + &self.p_binary
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoltzmannStats {
    pub attempts: u64,
    pub too_small: u64,
    pub too_large: u64,
    pub guard_aborts: u64,
    pub nodes_generated: u64,
}

#[derive(Clone, Debug)]
struct BState {
    leaf: u64,
    unary: Option<usize>,
    cut_leaf: f64,
    cut_unary: f64,
}

/// Free-size sampler: each object of size `n` is drawn with probability
/// proportional to `x^n`.
#[derive(Clone, Debug)]
pub struct BoltzmannSampler {
    family: Family,
    x: Float,
    states: Vec<BState>,
    root: usize,
    free_leaves: bool,
}

fn system(fam: Family) -> Result<(RadicalChain, Grammar, Vec<usize>), SampleError> {
    if let Family::LambdaUnaryHeight(0) | Family::LambdaBindingLength(0) = fam {
        return Err(RadicalError::EmptyClass(fam).into());
    }
    let chain = RadicalChain::new(fam).map_err(|_| SampleError::Unsupported(fam))?;
    let k = fam.param().expect("chain families carry a parameter") as usize;
    let grammar = Grammar::new(fam, k.max(1));
    let level_index: Vec<usize> = (0..grammar.states.len()).map(|s| if fam.is_motzkin() { s } else { k - s }).collect();
    Ok((chain, grammar, level_index))
}

// P_s(x) for every state, from the radicand values at x.
fn values(fam: Family, x: &Float) -> Result<(Grammar, Vec<Float>), SampleError> {
    let (chain, grammar, level_index) = system(fam)?;
    let ChainValue::Defined(r) = eval_chain(&chain, x) else {
        return Err(SampleError::Tuning { family: fam, x: format_sig(x, 20) });
    };
    let prec = x.prec();
    let two_x = Float::with_val(prec, x * 2u32);
    let p = grammar
        .states
        .iter()
        .enumerate()
        .map(|(s, st)| {
            let mut num = Float::with_val(prec, 1) - Float::with_val(prec, r[level_index[s]].sqrt_ref());
            if st.unary == Some(s) {
                num -= x;
            }
            num / &two_x
        })
        .collect();
    Ok((grammar, p))
}

/// Per-state branch probabilities at tuning `x`.
///
/// Fails with a precision alarm when some row does not sum to one.
pub fn boltzmann_probabilities(fam: Family, x: &Float) -> Result<Vec<LevelProbabilities>, SampleError> {
    let (grammar, p) = values(fam, x)?;
    let prec = x.prec();
    let tol = Float::with_val(prec, 1) >> PROBABILITY_TOLERANCE_BITS.min(prec.saturating_sub(28));
    let mut rows = Vec::with_capacity(p.len());
    for (s, st) in grammar.states.iter().enumerate() {
        if p[s] <= 0 {
            return Err(SampleError::PrecisionAlarm(format!("generating function of state {s} is not positive")));
        }
        let p_stop = Float::with_val(prec, x * st.leaf) / &p[s];
        let p_unary = match st.unary {
            Some(c) => Float::with_val(prec, x * &p[c]) / &p[s],
            None => Float::new(prec),
        };
        let p_binary = Float::with_val(prec, x * &p[s]);
        let row = LevelProbabilities { level: s, p_stop, p_unary, p_binary };
        let err = Float::with_val(prec, row.sum() - 1u32).abs();
        if err > tol {
            return Err(SampleError::PrecisionAlarm(format!(
                "branch probabilities of state {s} sum to 1 + {}",
                format_sig(&err, 3)
            )));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// The dominant singularity rounded down by one ulp.
pub fn singular_tuning(fam: Family, prec: u32) -> Result<Float, SampleError> {
    let chain = RadicalChain::new(fam).map_err(|_| SampleError::Unsupported(fam))?;
    let mut x = find_rho(&chain, prec)?;
    x.next_down();
    Ok(x)
}

/// Expected size `x P'(x) / P(x)` of a free Boltzmann draw, by a central
/// difference at step `x 2^(-prec/3)`.
pub fn mean_size(fam: Family, x: &Float) -> Result<Float, SampleError> {
    let prec = x.prec();
    let h = Float::with_val(prec, x >> (prec / 3));
    let root = |z: &Float| -> Result<Float, SampleError> {
        let (g, p) = values(fam, z)?;
        Ok(p[g.roots[0]].clone())
    };
    let hi = root(&Float::with_val(prec, x + &h))?;
    let lo = root(&Float::with_val(prec, x - &h))?;
    let mid = root(x)?;
    let d = Float::with_val(prec, &hi - &lo) / Float::with_val(prec, &h * 2u32);
    Ok(d * x / mid)
}

impl BoltzmannSampler {
    pub fn new(fam: Family, tuning: &Tuning, prec: u32) -> Result<BoltzmannSampler, SampleError> {
        let x = match tuning {
            Tuning::Singular => singular_tuning(fam, prec)?,
            Tuning::Plain(v) => Float::with_val(prec, *v),
        };
        BoltzmannSampler::at(fam, x)
    }

    pub fn at(fam: Family, x: Float) -> Result<BoltzmannSampler, SampleError> {
        let rows = boltzmann_probabilities(fam, &x)?;
        let (_, grammar, _) = system(fam)?;
        let states = grammar
            .states
            .iter()
            .zip(&rows)
            .map(|(st, r)| {
                let cut_leaf = r.p_stop.to_f64();
                BState { leaf: st.leaf, unary: st.unary, cut_leaf, cut_unary: cut_leaf + r.p_unary.to_f64() }
            })
            .collect();
        Ok(BoltzmannSampler { family: fam, x, states, root: grammar.roots[0], free_leaves: grammar.free_leaves })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn tuning(&self) -> &Float {
        &self.x
    }

    /// One free draw; `Err(nodes)` once more than `guard` nodes are built.
    pub fn sample_once<R: Rng + ?Sized>(&self, rng: &mut R, guard: usize) -> Result<Term, usize> {
        let mut todo = vec![self.root];
        let mut nodes = Vec::new();
        while let Some(s) = todo.pop() {
            if nodes.len() >= guard {
                return Err(nodes.len());
            }
            let st = &self.states[s];
            let u: f64 = rng.gen();
            if u < st.cut_leaf {
                let b = if self.free_leaves { Binder::Free } else { Binder::index(rng.gen_range(1..=st.leaf as u32)) };
                nodes.push(Node::Leaf(b));
            } else if u < st.cut_unary {
                nodes.push(Node::Unary);
                todo.push(st.unary.expect("unary branch has positive probability"));
            } else {
                nodes.push(Node::Binary);
                todo.push(s);
                todo.push(s);
            }
        }
        Ok(Term::from_preorder(nodes).expect("sampler emits a complete preorder"))
    }

    /// Repeats free draws until one lands in `[min, max]`.
    pub fn sample_window<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        min: usize,
        max: usize,
        guard: usize,
        max_attempts: u64,
    ) -> Result<(Term, BoltzmannStats), SampleError> {
        if min > max {
            return Err(SampleError::EmptyWindow { min, max });
        }
        let mut stats = BoltzmannStats::default();
        while stats.attempts < max_attempts {
            stats.attempts += 1;
            match self.sample_once(rng, guard) {
                Ok(t) => {
                    stats.nodes_generated += t.size() as u64;
                    if t.size() < min {
                        stats.too_small += 1;
                    } else if t.size() > max {
                        stats.too_large += 1;
                    } else {
                        return Ok((t, stats));
                    }
                }
                Err(n) => {
                    stats.nodes_generated += n as u64;
                    stats.guard_aborts += 1;
                }
            }
        }
        Err(SampleError::Rejected(stats))
    }
}

/// CSV with header `level,p_stop,p_unary,p_binary`.
pub fn write_probability_csv(rows: &[LevelProbabilities], digits: usize, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "level,p_stop,p_unary,p_binary")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            r.level,
            format_sig(&r.p_stop, digits),
            format_sig(&r.p_unary, digits),
            format_sig(&r.p_binary, digits)
        )?;
    }
    Ok(())
}
