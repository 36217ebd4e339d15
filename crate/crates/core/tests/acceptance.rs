use quiverhh::basis::{compute_basis, AlgebraBasis, DEFAULT_MAX_LEN};
use quiverhh::corpus::{self, random_gentle_cycle, random_gentle_tree};
use quiverhh::equivalence::{classify_binomials, equivalence_classes, verify_theorem};
use quiverhh::hochschild::{
    der0_basis, diagonal_der0_basis, extend_derivation, hh1_oracle, hh1_schurian, project_new_components,
    DiagonalDerivation,
};
use quiverhh::linalg::rat;
use quiverhh::monomial::{epsilon_report, hh1_monomial, parallel_data};
use quiverhh::presentation::Presentation;
use quiverhh::relext::{auto_relext_gentle, validate_pair, ExtensionPair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::ExitCode;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn basis(p: &Presentation) -> Result<AlgebraBasis, String> {
    compute_basis(p, DEFAULT_MAX_LEN).map_err(|e| e.to_string())
}

fn three_methods(b: &AlgebraBasis) -> Result<[usize; 3], String> {
    let oracle = hh1_oracle(b).hh1_dim;
    let schurian = hh1_schurian(b).map_err(|e| e.to_string())?.hh1_dim;
    let monomial = hh1_monomial(b).map_err(|e| e.to_string())?;
    Ok([oracle, schurian, monomial])
}

fn random_trees() -> Vec<ExtensionPair> {
    (0..120u64)
        .map(|seed| random_gentle_tree(2 + (seed % 7) as usize, seed).expect("tree corpus"))
        .collect()
}

fn random_cycles() -> Vec<ExtensionPair> {
    (0..40u64)
        .map(|seed| random_gentle_cycle(2 + (seed % 7) as usize, seed).expect("cycle corpus"))
        .collect()
}

fn ac1() -> Outcome {
    let b = basis(&corpus::kronecker())?;
    let (oracle, monomial) = (hh1_oracle(&b).hh1_dim, hh1_monomial(&b).map_err(|e| e.to_string())?);
    let eps = epsilon_report(&b, 0).map_err(|e| e.to_string())?;
    ensure(oracle == 3 && monomial == 3 && eps.epsilon == 2, || {
        format!("oracle {oracle}, monomial {monomial}, epsilon {}", eps.epsilon)
    })?;
    Ok(format!("hh1 {oracle}, epsilon {}", eps.epsilon))
}

fn ac2() -> Outcome {
    let b = basis(&corpus::triangle_bypass())?;
    let (oracle, monomial) = (hh1_oracle(&b).hh1_dim, hh1_monomial(&b).map_err(|e| e.to_string())?);
    let eps = epsilon_report(&b, 0).map_err(|e| e.to_string())?;
    ensure(oracle == 2 && monomial == 2 && eps.epsilon == 1, || {
        format!("oracle {oracle}, monomial {monomial}, epsilon {}", eps.epsilon)
    })?;
    Ok(format!("hh1 {oracle}, epsilon {}", eps.epsilon))
}

fn ac3() -> Outcome {
    let pair = auto_relext_gentle(&corpus::tilde_a_example()).map_err(|e| e.to_string())?;
    let bb = basis(&pair.b)?;
    let methods = three_methods(&bb)?;
    ensure(methods == [3, 3, 3], || format!("methods {methods:?}"))?;
    let r = verify_theorem(&pair, false, DEFAULT_MAX_LEN).map_err(|e| e.to_string())?;
    ensure(r.n == 2 && r.hh1_c == 1 && r.hh1_b == 3, || {
        format!("n {}, hh1 C {}, hh1 B {}", r.n, r.hh1_c, r.hh1_b)
    })?;
    ensure(r.passed(), || format!("{:?}", r.checks))?;
    let relations = pair.c.relations.len();
    let eps = epsilon_report(&bb, relations).map_err(|e| e.to_string())?;
    ensure(eps.epsilon == 0 && r.hh1_b == relations + 1, || {
        format!("epsilon {}", eps.epsilon)
    })?;
    Ok(format!("3 = {} + {}, epsilon 0, |R| = {relations}", r.hh1_c, r.n))
}

fn ac4() -> Outcome {
    for d in 1..=6 {
        let c = corpus::cd(d).map_err(|e| e.to_string())?;
        let pair = auto_relext_gentle(&c).map_err(|e| e.to_string())?;
        let methods = three_methods(&basis(&pair.b)?)?;
        ensure(methods == [d; 3], || format!("d = {d}: methods {methods:?}"))?;
        let r = verify_theorem(&pair, true, DEFAULT_MAX_LEN).map_err(|e| e.to_string())?;
        ensure(r.hh1_c == 0 && r.n == d && r.n_prime == 0, || {
            format!("d = {d}: hh1 C {}, n {}, n' {}", r.hh1_c, r.n, r.n_prime)
        })?;
        ensure(r.passed(), || format!("d = {d}: {:?}", r.checks))?;
    }
    Ok("d = 1..6".into())
}

fn ac5() -> Outcome {
    let pairs = random_trees();
    let mut relation_free = 0;
    for (seed, pair) in pairs.iter().enumerate() {
        let methods = three_methods(&basis(&pair.b)?)?;
        ensure(methods.iter().all(|&m| m == methods[0]), || {
            format!("seed {seed}: methods {methods:?}")
        })?;
        let diags = validate_pair(pair);
        ensure(diags.is_empty(), || format!("seed {seed}: {diags:?}"))?;
        let r = verify_theorem(pair, false, DEFAULT_MAX_LEN).map_err(|e| format!("seed {seed}: {e}"))?;
        let free = pair.c.relations.is_empty();
        relation_free += usize::from(free);
        ensure((r.hh1_b == 0) == free, || {
            format!("seed {seed}: hh1 {} with relation-free {free}", r.hh1_b)
        })?;
        ensure(r.hh1_b == r.hh1_c + r.n, || format!("seed {seed}: identity fails"))?;
        ensure(r.passed(), || format!("seed {seed}: {:?}", r.checks))?;
    }
    Ok(format!("{} pairs, {relation_free} relation-free", pairs.len()))
}

fn ac6() -> Outcome {
    let mut inputs = vec![
        ExtensionPair::identity(corpus::kronecker()),
        ExtensionPair::identity(corpus::triangle_bypass()),
        auto_relext_gentle(&corpus::tilde_a_example()).map_err(|e| e.to_string())?,
    ];
    inputs.extend(random_cycles());
    for (i, pair) in inputs.iter().enumerate() {
        let bb = basis(&pair.b)?;
        let relations = pair.c.relations.len();
        let eps = epsilon_report(&bb, relations).map_err(|e| e.to_string())?;
        ensure(eps.within_bounds, || format!("input {i}: {eps:?}"))?;
        ensure(eps.hh1_dim as i64 == 1 + relations as i64 + eps.epsilon, || {
            format!("input {i}: {eps:?}")
        })?;
        let q = bb.quiver();
        let shape = 1 - q.vertex_count() as i64 + q.arrow_count() as i64 + eps.epsilon;
        ensure(eps.hh1_dim as i64 == shape, || format!("input {i}: {eps:?} vs {shape}"))?;
    }
    Ok(format!("{} type Ã inputs", inputs.len()))
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut pairs = vec![auto_relext_gentle(&corpus::tilde_a_example()).map_err(|e| e.to_string())?];
    for d in 1..=4 {
        pairs.push(auto_relext_gentle(&corpus::cd(d).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?);
    }
    pairs.extend(random_trees().into_iter().take(20));
    pairs.extend(random_cycles().into_iter().take(10));
    let mut derivations = 0;
    for (i, pair) in pairs.iter().enumerate() {
        let (cb, bb) = (basis(&pair.c)?, basis(&pair.b)?);
        let dim = bb.dimension();
        for d in der0_basis(&bb) {
            derivations += 1;
            for _ in 0..50 {
                let (u, v) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
                ensure(d.leibniz_holds(&bb, u, v), || {
                    format!("pair {i}: Leibniz fails on ({u}, {v})")
                })?;
            }
        }
        let cls = classify_binomials(pair, &bb, &cb).map_err(|e| e.to_string())?;
        let eq = equivalence_classes(pair, &cls);
        let reps = eq.representatives();
        for delta in diagonal_der0_basis(&cb) {
            let ext = extend_derivation(pair, &delta).map_err(|e| e.to_string())?;
            ensure(ext.to_derivation(&bb).kills_relations(&bb), || {
                format!("pair {i}: zeta image fails")
            })?;
            let phi = project_new_components(pair, &ext, &reps).map_err(|e| e.to_string())?;
            ensure(phi.is_zero(), || format!("pair {i}: phi(zeta) = {phi}"))?;
        }
        for (k, class) in eq.classes.iter().enumerate() {
            let mut pre = DiagonalDerivation::default();
            for &a in class {
                pre.set(pair.b.quiver.arrow_name(a), rat(1));
            }
            ensure(pre.to_derivation(&bb).kills_relations(&bb), || {
                format!("pair {i}: preimage {k} invalid")
            })?;
            let phi = project_new_components(pair, &pre, &reps).map_err(|e| e.to_string())?;
            let unit = (0..reps.len()).all(|j| phi.entries[j] == rat(i64::from(j == k)));
            ensure(unit, || format!("pair {i}: phi(preimage {k}) = {phi}"))?;
        }
    }
    Ok(format!("{} pairs, {derivations} basis derivations", pairs.len()))
}

fn ac8() -> Outcome {
    let mut presentations = vec![
        corpus::kronecker(),
        corpus::triangle_bypass(),
        corpus::tilde_a_example(),
    ];
    presentations.push(
        auto_relext_gentle(&corpus::tilde_a_example())
            .map_err(|e| e.to_string())?
            .b,
    );
    for d in 1..=6 {
        let c = corpus::cd(d).map_err(|e| e.to_string())?;
        presentations.push(auto_relext_gentle(&c).map_err(|e| e.to_string())?.b);
        presentations.push(c);
    }
    for pair in random_trees().into_iter().take(30) {
        presentations.push(pair.b);
    }
    for (i, p) in presentations.iter().enumerate() {
        let degree = basis(p)?.nilpotency_degree();
        let low = compute_basis(p, degree).map_err(|e| format!("input {i} at {degree}: {e}"))?;
        let high = compute_basis(p, degree + 10).map_err(|e| format!("input {i} at {}: {e}", degree + 10))?;
        ensure(low.basis_paths() == high.basis_paths(), || {
            format!("input {i}: bases differ")
        })?;
        ensure(hh1_oracle(&low) == hh1_oracle(&high), || {
            format!("input {i}: hh1 differs")
        })?;
        let (a, b) = (
            parallel_data(&low).map_err(|e| e.to_string())?,
            parallel_data(&high).map_err(|e| e.to_string())?,
        );
        let sizes = |d: &quiverhh::monomial::ParallelData| {
            [
                d.n.len(),
                d.q0n.len(),
                d.q1n.len(),
                d.q1n_g.len(),
                d.q1n_a.len(),
                d.q1n_e.len(),
                d.rn.len(),
            ]
        };
        ensure(sizes(&a) == sizes(&b), || format!("input {i}: parallel sets differ"))?;
    }
    Ok(format!("{} presentations", presentations.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("AC1 Kronecker", ac1),
        ("AC2 triangle with bypass", ac2),
        ("AC3 hexagon pair", ac3),
        ("AC4 C_d family", ac4),
        ("AC5 random gentle trees", ac5),
        ("AC6 epsilon bounds", ac6),
        ("AC7 derivation structure", ac7),
        ("AC8 max path length robustness", ac8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(reason) => {
                failed += 1;
                println!("FAIL {name}: {reason}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
