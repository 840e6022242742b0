//! Acceptance suite: one pass/fail line per criterion.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use lagmono_core::classifier::{classify, enumerate_closure, member_nf, GeneratorSet};
use lagmono_core::dihedral::{
    change_basis, f_of, g_of, reduce_word, to_nf, DihedralNF, Generator, GmuElement, GroupWord, Letter,
};
use lagmono_core::exact::{Int2Vec, MaslovForm, Unimodular2};
use lagmono_core::spectrum::{mf_by_determinant, mf_by_determinant_in, mf_value};
use lagmono_core::symgeo::{
    flow_image_distance, hamiltonian_residual, induced_monodromy, maslov_index, monotonicity_constant,
    monotonicity_fit, symplectic_grid, tubular_delta, twist_exclusion, ChartPoint, ChartSpec, Family, FlowSpec,
    LoopSpec, Point4, MAX_WINDING_DRIFT, TORUS_TOLERANCE,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

const RADII: [f64; 3] = [0.5, 1.0, 2.0];
const FAMILIES: [Family; 2] = [Family::Clifford, Family::Chekanov];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ac1_invariants() -> Outcome {
    let start = Instant::now();
    for family in FAMILIES {
        let expected_s = if family == Family::Clifford { 2 } else { 1 };
        for b in RADII {
            let out = Command::new(env!("CARGO_BIN_EXE_lagmono"))
                .args(["verify", family.name(), "--b", &b.to_string()])
                .output()
                .map_err(|e| e.to_string())?;
            let doc: Value = serde_json::from_slice(&out.stdout).map_err(|e| format!("{family} b={b}: {e}"))?;
            let inv = &doc["invariants"][family.name()];
            ensure(out.status.code() == Some(0) && doc["overall_pass"] == true, || {
                format!("{family} b={b}: verify did not pass")
            })?;
            ensure(inv["t"] == 0 && inv["s"] == expected_s, || format!("{family} b={b}: got {inv}"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("runtime {elapsed:?}"))?;
    Ok(format!("clifford t=0 s=2, chekanov t=0 s=1 for b in {RADII:?} ({elapsed:.2?})"))
}

fn word_matrix(w: &GroupWord) -> Result<Unimodular2, String> {
    let (f, g) = (*f_of(0).mat(), *g_of(1).mat());
    w.letters().iter().try_fold(Unimodular2::IDENTITY, |acc, l| {
        let base = if l.gen == Generator::F { f } else { g };
        acc.compose(&base.pow(l.exp).map_err(|e| e.to_string())?).map_err(|e| e.to_string())
    })
}

fn ac2_dihedral() -> Outcome {
    let (f, g) = (*f_of(0).mat(), *g_of(1).mat());
    let e = |r: lagmono_core::Result<Unimodular2>| r.map_err(|e| e.to_string());
    ensure(e(f.compose(&f))? == Unimodular2::IDENTITY, || "f^2 != e".into())?;
    ensure(e(e(f.compose(&g))?.compose(&f))? == e(g.invert())?, || "f g f != g^-1".into())?;
    for k in -20..=20 {
        ensure(e(f_of(k).mat().compose(f_of(k).mat()))? == Unimodular2::IDENTITY, || format!("f_{k}^2"))?;
        ensure(*g_of(k).mat() == e(g.pow(k))?, || format!("g_{k} != g_1^{k}"))?;
    }
    for k in -10..=10 {
        for l in -10..=10 {
            ensure(e(f_of(k).mat().compose(f_of(l).mat()))? == *g_of(k - l).mat(), || format!("f_{k} f_{l}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..1000 {
        let len = rng.gen_range(0..=30);
        let letters = (0..len)
            .map(|_| Letter {
                gen: if rng.gen_bool(0.5) { Generator::F } else { Generator::G },
                exp: rng.gen_range(-5..=5),
            })
            .collect();
        let w = GroupWord(letters);
        let nf = reduce_word(&w).map_err(|e| e.to_string())?;
        let oracle = to_nf(&word_matrix(&w)?).map_err(|e| e.to_string())?;
        ensure(nf == oracle, || format!("{w}: reduced {nf}, matrix {oracle}"))?;
    }
    Ok("relations, f_k f_l = g_(k-l) on [-10,10]^2, 1000 random words".into())
}

fn generator_sets() -> Vec<GeneratorSet> {
    let pool: Vec<GmuElement> = (-6..=6).flat_map(|n| [f_of(n), g_of(n)]).collect();
    let mut sets = vec![GeneratorSet::default()];
    for i in 0..pool.len() {
        sets.push(GeneratorSet::new(vec![pool[i]]));
        for j in i..pool.len() {
            sets.push(GeneratorSet::new(vec![pool[i], pool[j]]));
            for k in j..pool.len() {
                sets.push(GeneratorSet::new(vec![pool[i], pool[j], pool[k]]));
            }
        }
    }
    sets
}

fn ac3_classifier() -> Outcome {
    let start = Instant::now();
    let sets = generator_sets();
    let (mut unsound, mut unreached, mut incomplete_sets) = (0usize, 0usize, 0usize);
    let mut example = None;
    for gens in &sets {
        let cls = classify(gens).map_err(|e| e.to_string())?;
        let small = enumerate_closure(gens, 8).map_err(|e| e.to_string())?;
        unsound += small.iter().filter(|nf| !member_nf(&cls, **nf)).count();
        let reached = enumerate_closure(gens, 12).map_err(|e| e.to_string())?;
        let before = unreached;
        for n in -12..=12 {
            for nf in [DihedralNF::twist(n), DihedralNF::reflection(n)] {
                if member_nf(&cls, nf) && !reached.contains(&nf) {
                    unreached += 1;
                    example.get_or_insert_with(|| format!("{nf} in {cls} from {{{gens}}}"));
                }
            }
        }
        if unreached > before {
            incomplete_sets += 1;
        }
    }
    let elapsed = start.elapsed();
    let summary = format!(
        "{} sets, {unsound} unsound elements, {unreached} members with |n|<=12 unreached at word length 12 \
         in {incomplete_sets} sets ({elapsed:.2?})",
        sets.len()
    );
    ensure(unsound == 0 && unreached == 0 && elapsed < Duration::from_secs(30), || match &example {
        Some(ex) => format!("{summary}; e.g. {ex}"),
        None => summary.clone(),
    })?;
    Ok(summary)
}

fn ac4_mf() -> Outcome {
    let mu = MaslovForm::adapted(2).map_err(|e| e.to_string())?;
    for k in -20..=20 {
        let mf = mf_value(&f_of(k), &mu).map_err(|e| e.to_string())?;
        ensure((mf == 1) == (k % 2 == 0), || format!("m_f(f_{k}) = {mf}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let adapted = MaslovForm::adapted(1).map_err(|e| e.to_string())?;
    let sigma = Int2Vec::new(0, 1);
    let mut changes = 0;
    while changes < 50 {
        let e: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-4..=4));
        let Ok(b) = Unimodular2::new(e[0], e[1], e[2], e[3]) else { continue };
        changes += 1;
        for k in -10..=10 {
            let f = f_of(k);
            let run = || -> lagmono_core::Result<(i64, i64, i64)> {
                let moved = mf_by_determinant_in(
                    &change_basis(f.mat(), &b)?,
                    b.invert()?.apply(sigma)?,
                    &adapted.pullback(&b)?,
                )?;
                Ok((mf_value(&f, &mu)?, mf_by_determinant(&f, sigma)?, moved))
            };
            let (value, det, moved) = run().map_err(|e| e.to_string())?;
            ensure(value == det && det == moved, || format!("B={b} k={k}: {value} {det} {moved}"))?;
        }
    }
    Ok("parity on [-20,20]; determinant formula under 50 basis changes".into())
}

fn ac5_symplectic() -> Outcome {
    let mut worst = 0.0f64;
    let mut ratios = Vec::new();
    for family in FAMILIES {
        for b in RADII {
            let c = ChartSpec::new(family, b).map_err(|e| e.to_string())?;
            let coarse = symplectic_grid(&c, 10, tubular_delta(b), 1e-4).map_err(|e| e.to_string())?;
            let fine = symplectic_grid(&c, 10, tubular_delta(b), 5e-5).map_err(|e| e.to_string())?;
            let ratio = coarse / fine;
            ensure(coarse < 1e-6, || format!("{family} b={b}: residual {coarse:.3e}"))?;
            ensure((ratio - 4.0).abs() <= 0.5, || format!("{family} b={b}: halving ratio {ratio:.3}"))?;
            worst = worst.max(coarse);
            ratios.push(ratio);
        }
    }
    let (lo, hi) = ratios.iter().fold((f64::MAX, 0.0f64), |(l, h), r| (l.min(*r), h.max(*r)));
    Ok(format!("max residual {worst:.2e} on 10^4 grids, halving ratio in [{lo:.3}, {hi:.3}]"))
}

fn ac6_maslov() -> Outcome {
    for (family, expected) in [(Family::Clifford, [2, 2]), (Family::Chekanov, [2, 0])] {
        let c = ChartSpec::new(family, 1.0).map_err(|e| e.to_string())?;
        for (i, (p, q)) in [(1, 0), (0, 1)].into_iter().enumerate() {
            for n in [512, 1024] {
                let lp = LoopSpec::basis(p, q, n).map_err(|e| e.to_string())?;
                let mu = maslov_index(&c, &lp).map_err(|e| e.to_string())?;
                ensure(mu == expected[i], || format!("{family} ({p},{q}) n={n}: {mu}"))?;
            }
        }
        ensure(num_gcd(expected[0], expected[1]) == 2, || "divisibility".into())?;
    }
    Ok("clifford (2, 2), chekanov (2, 0) at 512 and 1024 samples; gcd 2".into())
}

fn num_gcd(a: i64, b: i64) -> i64 {
    lagmono_core::exact::gcd(a, b).unwrap_or(0)
}

fn ac7_flows() -> Outcome {
    let expected = [
        (Family::Clifford, Unimodular2::new(0, 1, 1, 0).map_err(|e| e.to_string())?),
        (Family::Chekanov, Unimodular2::new(1, 0, 0, -1).map_err(|e| e.to_string())?),
    ];
    let (mut drift, mut dist, mut ham) = (0.0f64, 0.0f64, 0.0f64);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (family, matrix) in expected {
        let c = ChartSpec::new(family, 1.0).map_err(|e| e.to_string())?;
        let flow = FlowSpec::for_family(family);
        let loops = [LoopSpec::basis(1, 0, 512).unwrap(), LoopSpec::basis(0, 1, 512).unwrap()];
        let m = induced_monodromy(&flow, &c, &loops).map_err(|e| e.to_string())?;
        ensure(m.matrix == matrix && m.drift < MAX_WINDING_DRIFT, || {
            format!("{family}: {} drift {:.3e}", m.matrix, m.drift)
        })?;
        drift = drift.max(m.drift);
        let d = flow_image_distance(&flow, &c, [0.0, 0.0], [0.0, 0.0], 64).map_err(|e| e.to_string())?;
        ensure(d < TORUS_TOLERANCE, || format!("{family}: torus distance {d:.3e}"))?;
        dist = dist.max(d);
        let [p1, p2] = c.periods();
        let mut points: Vec<Point4> = (0..64)
            .map(|i| c.eval(&ChartPoint::new(p1 * (i % 8) as f64 / 8.0, p2 * (i / 8) as f64 / 8.0, 0.0, 0.0)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        while points.len() < 128 {
            let p = Point4::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if p.norm() <= 3.0 {
                points.push(p);
            }
        }
        for p in &points {
            let r = hamiltonian_residual(&flow, p, 1e-5).map_err(|e| e.to_string())?;
            ensure(r < 1e-7, || format!("{family}: Hamiltonian residual {r:.3e}"))?;
            ham = ham.max(r);
        }
    }
    Ok(format!(
        "(0 1; 1 0) and (1 0; 0 -1), drift {drift:.1e}, torus distance {dist:.1e}, Hamiltonian residual {ham:.1e}"
    ))
}

fn ac8_twists() -> Outcome {
    let mut cases = 0;
    for family in FAMILIES {
        for b in RADII {
            for eps in [1e-2, 1e-3] {
                for k in -5..=5 {
                    let excluded = twist_exclusion(family, b, k, eps).map_err(|e| e.to_string())?;
                    ensure(excluded == (k != 0), || format!("{family} b={b} eps={eps} k={k}: {excluded}"))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} cases: every k != 0 excluded, k = 0 kept (oracle-backed)"))
}

fn ac9_monotonicity() -> Outcome {
    let basis = |section: [f64; 2]| -> Result<[LoopSpec; 2], String> {
        Ok([
            LoopSpec::new(Int2Vec::new(1, 0), 512, section).map_err(|e| e.to_string())?,
            LoopSpec::new(Int2Vec::new(0, 1), 512, section).map_err(|e| e.to_string())?,
        ])
    };
    let mut worst = 0.0f64;
    for b in RADII {
        let target = PI * b * b / 2.0;
        let c = ChartSpec::clifford(b).map_err(|e| e.to_string())?;
        let constant = monotonicity_constant(&c, &basis([0.0, 0.0])?).map_err(|e| e.to_string())?;
        let rel = (constant - target).abs() / target;
        ensure(rel <= 1e-6, || format!("clifford b={b}: c = {constant}"))?;
        worst = worst.max(rel);
        let k = ChartSpec::chekanov(b).map_err(|e| e.to_string())?;
        let fit = monotonicity_fit(&k, &basis([0.0, 0.0])?).map_err(|e| e.to_string())?;
        ensure(fit.relative_residual <= 1e-6, || format!("chekanov b={b}: {:.3e}", fit.relative_residual))?;
        worst = worst.max(fit.relative_residual);
        for frac in [0.25, 0.5, -0.5] {
            let section = [0.0, frac * c.fiber_bound()];
            let skew = monotonicity_constant(&c, &basis(section)?);
            ensure(skew.is_err(), || format!("clifford b={b} section {section:?} accepted as monotone"))?;
        }
    }
    Ok(format!("clifford c = pi b^2 / 2 and chekanov consistency within {worst:.1e}; a != b rejected"))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Outcome); 9] = [
        ("AC1", "invariants from verify", ac1_invariants),
        ("AC2", "infinite dihedral structure", ac2_dihedral),
        ("AC3", "classification oracle", ac3_classifier),
        ("AC4", "m_f parity and determinant", ac4_mf),
        ("AC5", "chart symplecticity", ac5_symplectic),
        ("AC6", "Maslov indices", ac6_maslov),
        ("AC7", "flow monodromies", ac7_flows),
        ("AC8", "twist exclusion", ac8_twists),
        ("AC9", "monotonicity", ac9_monotonicity),
    ];
    let mut failures = 0;
    for (id, title, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] {id} {title}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {id} {title}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
