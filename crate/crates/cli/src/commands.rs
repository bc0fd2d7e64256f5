use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use sublattice::embed::{self, verify_embedding_sampled};
use sublattice::lattice::{
    permutation_lattice, tamari_lattice, BoundedVerdict, LatticeView, SemidistributiveVerdict,
};
use sublattice::{
    enumerate_tamari, parse_word, verify_embedding, verify_height, BinaryTree, BracketingFn,
    InversionSet, Permutation,
};

use crate::{Command, Failure, Format, LatticeKind, LatticeOp, Source, Suite, Target, VerifyOpts};

/// Listing limits; the Hasse diagram keeps full join/meet tables.
const MAX_LIST_PERM: usize = 8;
const MAX_DOT_PERM: usize = 6;
const MAX_DOT_TAMARI: usize = 8;
const MAX_STATS: usize = 9;
const MAX_SD: usize = 5;
const MAX_BOUNDED: usize = 5;
const MAX_ROUNDTRIP: usize = 8;

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn require_range(what: &str, n: usize, max: usize) -> Outcome {
    if !(1..=max).contains(&n) {
        return Err(usage(format!("{what}: --n must be in 1..={max}, got {n}")));
    }
    Ok(())
}

pub fn run(command: Command, out: &mut String) -> Outcome {
    match command {
        Command::Enumerate { lattice, n, format } => enumerate(lattice, n, format, out),
        Command::Convert { from, to, value } => convert(from, to, &value, out),
        Command::Op {
            op,
            lattice,
            as_,
            a,
            b,
        } => lattice_op(op, lattice, as_.is_some(), &a, &b, out),
        Command::Hasse {
            lattice,
            n,
            mark_image,
        } => {
            if mark_image && lattice == LatticeKind::Tamari {
                return Err(usage("--mark-image applies to --lattice perm only"));
            }
            hasse(lattice, n, mark_image, out)
        }
        Command::Verify { suite, opts } => verify(suite, opts, out),
        Command::Stats { n } => stats(n, out),
    }
}

fn enumerate(lattice: LatticeKind, n: usize, format: Format, out: &mut String) -> Outcome {
    if format == Format::Dot {
        return hasse(lattice, n, false, out);
    }
    match lattice {
        LatticeKind::Perm => {
            require_range("enumerate perm", n, MAX_LIST_PERM)?;
            let perms: Vec<Permutation> = Permutation::all(n)?.collect();
            if format == Format::Json {
                *out += &serde_json::to_string_pretty(&perms)?;
                out.push('\n');
            } else {
                for p in &perms {
                    let _ = writeln!(out, "{p}\t{}", p.inversions().rank());
                }
            }
        }
        LatticeKind::Tamari => {
            let all: Vec<BracketingFn> = enumerate_tamari(n)?.collect();
            if format == Format::Json {
                *out += &serde_json::to_string_pretty(&all)?;
                out.push('\n');
            } else {
                for e in &all {
                    let word = BinaryTree::from_bracketing_fn(e).to_word();
                    let _ = writeln!(out, "{e}\t{}\t{word}", e.height());
                }
            }
        }
    }
    Ok(())
}

enum Parsed {
    Bracketing(BracketingFn),
    Inversions(InversionSet),
}

fn convert(from: Source, to: Target, value: &str, out: &mut String) -> Outcome {
    let parsed = match from {
        Source::Word => Parsed::Bracketing(parse_word(value)?.to_bracketing_fn()?),
        Source::Fn => Parsed::Bracketing(value.parse()?),
        Source::Perm => Parsed::Inversions(value.parse::<Permutation>()?.inversions()),
        Source::Invset => Parsed::Inversions(serde_json::from_str(value)?),
    };
    match to {
        Target::Word | Target::Tree | Target::Fn => {
            let e = match parsed {
                Parsed::Bracketing(e) => e,
                Parsed::Inversions(a) => embed::phi_inverse(&a)?,
            };
            match to {
                Target::Fn => {
                    let _ = writeln!(out, "{e}");
                }
                Target::Word => {
                    let _ = writeln!(out, "{}", BinaryTree::from_bracketing_fn(&e));
                }
                _ => *out += &BinaryTree::from_bracketing_fn(&e).render(),
            }
        }
        Target::Invset | Target::Perm => {
            let a = match parsed {
                Parsed::Bracketing(e) => embed::phi(&e),
                Parsed::Inversions(a) => a,
            };
            if to == Target::Perm {
                let _ = writeln!(out, "{}", a.realize());
            } else {
                let _ = writeln!(out, "{}", serde_json::to_string(&a)?);
            }
        }
    }
    Ok(())
}

fn lattice_op(op: LatticeOp, lattice: LatticeKind, as_perm: bool, a: &str, b: &str, out: &mut String) -> Outcome {
    match lattice {
        LatticeKind::Tamari => {
            if as_perm {
                return Err(usage("--as perm applies to --lattice perm only"));
            }
            let (e, f): (BracketingFn, BracketingFn) = (a.parse()?, b.parse()?);
            let r = match op {
                LatticeOp::Join => e.join(&f)?,
                LatticeOp::Meet => e.meet(&f)?,
            };
            let _ = writeln!(out, "{r}");
        }
        LatticeKind::Perm => {
            let read = |s: &str| -> Result<InversionSet, Failure> {
                if as_perm {
                    Ok(s.parse::<Permutation>()?.inversions())
                } else {
                    Ok(serde_json::from_str(s)?)
                }
            };
            let (x, y) = (read(a)?, read(b)?);
            let r = match op {
                LatticeOp::Join => x.join(&y)?,
                LatticeOp::Meet => x.meet(&y)?,
            };
            if as_perm {
                let _ = writeln!(out, "{}", r.realize());
            } else {
                let _ = writeln!(out, "{}", serde_json::to_string(&r)?);
            }
        }
    }
    Ok(())
}

fn hasse(lattice: LatticeKind, n: usize, mark_image: bool, out: &mut String) -> Outcome {
    match lattice {
        LatticeKind::Perm => {
            require_range("hasse perm", n, MAX_DOT_PERM)?;
            let view = permutation_lattice(n)?;
            *out += &view.to_dot(
                &format!("S_{n}"),
                |a| a.realize().to_string(),
                |a| mark_image && embed::satisfies_i2star(a),
            );
        }
        LatticeKind::Tamari => {
            require_range("hasse tamari", n, MAX_DOT_TAMARI)?;
            let view = tamari_lattice(n)?;
            *out += &view.to_dot(&format!("T_{n}"), |e| e.to_string(), |_| false);
        }
    }
    Ok(())
}

fn emit<T: Serialize>(report: &T, passed: bool, out: &mut String) -> Outcome {
    *out += &serde_json::to_string_pretty(report)?;
    out.push('\n');
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

#[derive(Serialize)]
struct Labeled {
    x: String,
    y: String,
    z: String,
}

#[derive(Serialize)]
struct SdSummary {
    elements: usize,
    join_law: Option<Labeled>,
    meet_law: Option<Labeled>,
}

fn sd_summary<T>(view: &LatticeView<T>, verdict: SemidistributiveVerdict, label: impl Fn(&T) -> String) -> SdSummary {
    let name = |t: sublattice::lattice::Triple| Labeled {
        x: label(view.element(t.x)),
        y: label(view.element(t.y)),
        z: label(view.element(t.z)),
    };
    SdSummary {
        elements: view.len(),
        join_law: verdict.join_law.map(name),
        meet_law: verdict.meet_law.map(name),
    }
}

#[derive(Serialize)]
struct BoundedSummary {
    elements: usize,
    lower_bounded: bool,
    upper_bounded: bool,
    lower_cycle: Option<Vec<String>>,
    upper_cycle: Option<Vec<String>>,
}

fn bounded_summary<T>(view: &LatticeView<T>, verdict: BoundedVerdict, label: impl Fn(&T) -> String) -> BoundedSummary {
    let name = |cycle: Vec<usize>| cycle.into_iter().map(|i| label(view.element(i))).collect();
    BoundedSummary {
        elements: view.len(),
        lower_bounded: verdict.lower_bounded,
        upper_bounded: verdict.upper_bounded,
        lower_cycle: verdict.lower_cycle.map(name),
        upper_cycle: verdict.upper_cycle.map(name),
    }
}

#[derive(Serialize)]
struct PairReport<S> {
    n: usize,
    perm: S,
    tamari: S,
    passed: bool,
    millis: u128,
}

#[derive(Serialize)]
struct RoundtripReport {
    n: usize,
    checks: RoundtripChecks,
    witness: Option<String>,
    passed: bool,
    millis: u128,
}

#[derive(Serialize, Default)]
struct RoundtripChecks {
    realize_inversions: bool,
    phi_inverse_phi: bool,
    word_fn_word: bool,
}

fn perm_label(a: &InversionSet) -> String {
    a.realize().to_string()
}

fn verify(suite: Suite, opts: VerifyOpts, out: &mut String) -> Outcome {
    let n = opts.n;
    if suite != Suite::Embedding && (opts.seed.is_some() || opts.samples.is_some()) {
        return Err(usage("--seed and --samples apply to `verify embedding` only"));
    }
    match suite {
        Suite::Embedding => {
            let report = match (opts.samples, opts.seed) {
                (Some(samples), seed) => verify_embedding_sampled(n, seed.unwrap_or(0), samples)?,
                (None, None) => verify_embedding(n)?,
                (None, Some(_)) => return Err(usage("--seed requires --samples")),
            };
            emit(&report, report.passed(), out)
        }
        Suite::Height => {
            let report = verify_height(n)?;
            emit(&report, report.passed(), out)
        }
        Suite::Semidistributive => {
            require_range("verify semidistributive", n, MAX_SD)?;
            let start = Instant::now();
            let s = permutation_lattice(n)?;
            let t = tamari_lattice(n)?;
            let (sv, tv) = (s.check_semidistributive(), t.check_semidistributive());
            let passed = sv.holds() && tv.holds();
            let report = PairReport {
                n,
                perm: sd_summary(&s, sv, perm_label),
                tamari: sd_summary(&t, tv, |e| e.to_string()),
                passed,
                millis: start.elapsed().as_millis(),
            };
            emit(&report, passed, out)
        }
        Suite::Bounded => {
            require_range("verify bounded", n, MAX_BOUNDED)?;
            let start = Instant::now();
            let s = permutation_lattice(n)?;
            let t = tamari_lattice(n)?;
            let (sv, tv) = (s.check_bounded(), t.check_bounded());
            let passed = sv.is_bounded() && tv.is_bounded();
            let report = PairReport {
                n,
                perm: bounded_summary(&s, sv, perm_label),
                tamari: bounded_summary(&t, tv, |e| e.to_string()),
                passed,
                millis: start.elapsed().as_millis(),
            };
            emit(&report, passed, out)
        }
        Suite::Roundtrip => {
            require_range("verify roundtrip", n, MAX_ROUNDTRIP)?;
            let start = Instant::now();
            let (checks, witness) = roundtrip(n)?;
            let passed = witness.is_none();
            let report = RoundtripReport {
                n,
                checks,
                witness,
                passed,
                millis: start.elapsed().as_millis(),
            };
            emit(&report, passed, out)
        }
    }
}

fn roundtrip(n: usize) -> Result<(RoundtripChecks, Option<String>), Failure> {
    let mut checks = RoundtripChecks::default();
    let mut witness = None;

    let bad_perm = Permutation::all(n)?.find(|p| p.inversions().realize() != *p);
    checks.realize_inversions = bad_perm.is_none();
    witness = witness.or(bad_perm.map(|p| format!("realize_inversions: {p}")));

    let all: Vec<BracketingFn> = enumerate_tamari(n)?.collect();
    let bad_phi = all
        .iter()
        .find(|e| embed::phi_inverse(&embed::phi(e)).ok().as_ref() != Some(*e));
    checks.phi_inverse_phi = bad_phi.is_none();
    witness = witness.or(bad_phi.map(|e| format!("phi_inverse_phi: {e}")));

    let bad_word = all.iter().find_map(|e| {
        let word = BinaryTree::from_bracketing_fn(e).to_word();
        let back = parse_word(&word).ok().and_then(|t| t.to_bracketing_fn().ok());
        let reprinted = back.as_ref().map(|f| BinaryTree::from_bracketing_fn(f).to_word());
        (back.as_ref() != Some(e) || reprinted.as_deref() != Some(word.as_str())).then(|| format!("word_fn_word: {word}"))
    });
    checks.word_fn_word = bad_word.is_none();
    witness = witness.or(bad_word);
    Ok((checks, witness))
}

fn stats(n: usize, out: &mut String) -> Outcome {
    require_range("stats", n, MAX_STATS)?;
    let s_size = Permutation::all(n)?.count();
    let tamari: Vec<BracketingFn> = enumerate_tamari(n)?.collect();
    let s_top = Permutation::reversal(n)?.inversions().rank();
    let t_top = tamari.iter().map(BracketingFn::height).max().unwrap_or(0);
    let s_atoms = InversionSet::empty(n)?.covers_up().len();
    let t_atoms = tamari.iter().filter(|e| e.height() == 1).count();
    let image = Permutation::all(n)?
        .filter(|p| embed::satisfies_i2star(&p.inversions()))
        .count();
    let _ = writeln!(out, "n\t{n}");
    let _ = writeln!(out, "|S_n|\t{s_size}");
    let _ = writeln!(out, "|T_n|\t{}", tamari.len());
    let _ = writeln!(out, "|image in S_n|\t{image}");
    let _ = writeln!(out, "height(top S_n)\t{s_top}");
    let _ = writeln!(out, "height(top T_n)\t{t_top}");
    let _ = writeln!(out, "atoms(S_n)\t{s_atoms}");
    let _ = writeln!(out, "atoms(T_n)\t{t_atoms}");
    Ok(())
}
