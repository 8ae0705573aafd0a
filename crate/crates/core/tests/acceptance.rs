// SPDX-License-Identifier: Apache-2.0

//! One line per acceptance criterion; exits nonzero if any fails.

use std::path::Path;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use xmodcat::abelian::GammaModule;
use xmodcat::catgroup::{build_catgroup, build_catgroup_unchecked, check_axioms};
use xmodcat::cohomology::{h2, h2_brute, representatives_compatible, Cochain3};
use xmodcat::corpus::{acceptance_modules, corpus, involutions_preserving, mutate, random_module, rng, seed_from_env};
use xmodcat::crossed::enumerate_morphisms;
use xmodcat::extensions::{classify, middle_invariants, schreier_bijection_check, Classification};
use xmodcat::functor::{catgroup_to_crossed, functor_to_morphism, morphism_to_functor};
use xmodcat::group::{FiniteGroup, GammaAction, GroupHom};
use xmodcat::search::{dis_cochain, homotopy_classes, FunctorType, SearchTarget};

const GUARD: u128 = 1 << 32;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn module(n: usize, act: &[usize], gamma: &Arc<FiniteGroup>) -> Arc<GammaModule> {
    let g = Arc::new(FiniteGroup::cyclic(n));
    let a = if gamma.order() == 1 { GammaAction::trivial(gamma.clone(), g) } else { GammaAction::involution(g, act).unwrap() };
    Arc::new(GammaModule::new(a).unwrap())
}

fn criterion1() -> Verdict {
    let mods = acceptance_modules();
    let mut bad = Vec::new();
    for nm in &mods {
        let r = nm.module.validate();
        let named = ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "Gamma1", "Gamma2"].iter().all(|c| r.get(c).is_some_and(|c| c.passed()));
        if !(r.passed() && named && nm.module.derived_checks().passed()) {
            bad.push(nm.name.clone());
        }
    }
    let gammas = mods.iter().filter(|m| m.module.gamma().order() == 2).count();
    verdict(bad.is_empty() && mods.len() == 6 && gammas == 3, format!("{} instances, {} with Γ = ℤ/2, failing {bad:?}", mods.len(), gammas))
}

fn criterion2() -> Verdict {
    let seed = seed_from_env(2024);
    let mut failing = Vec::new();
    for nm in corpus() {
        if !check_axioms(&build_catgroup(&nm.module)).passed() {
            failing.push(nm.name);
        }
    }
    let mut r = rng(seed);
    let randoms: Vec<_> = (0..1000).map(|_| random_module(&mut r)).collect();
    let random_fail = randoms.iter().filter(|m| !check_axioms(&build_catgroup(m)).passed()).count();
    let (mut breaking, mut caught, mut by_axioms, mut silent_ok) = (0, 0, 0, 0);
    let mut i = 0;
    while breaking < 100 && i < 100_000 {
        let base = &randoms[i % randoms.len()];
        i += 1;
        let Some((m, _)) = mutate(base.inner(), &mut r) else { continue };
        let v = m.validate();
        if v.passed() {
            // a mutation that keeps the axioms must still give a coherent category
            if m.gamma_b.is_valid() && m.gamma_d.is_valid() {
                if let Ok(g) = build_catgroup_unchecked(&m) {
                    if !check_axioms(&g).passed() {
                        silent_ok += 1;
                    }
                }
            }
            continue;
        }
        breaking += 1;
        let axioms_fail = m.gamma_b.is_valid() && m.gamma_d.is_valid() && build_catgroup_unchecked(&m).is_ok_and(|g| !check_axioms(&g).passed());
        by_axioms += usize::from(axioms_fail);
        caught += usize::from(!v.passed() || axioms_fail);
    }
    let ok = failing.is_empty() && random_fail == 0 && breaking == 100 && caught == 100 && silent_ok == 0;
    verdict(
        ok,
        format!("seed {seed}: corpus failing {failing:?}, 1000 random failing {random_fail}; {caught}/{breaking} breaking mutations caught ({by_axioms} also by the category axioms)"),
    )
}

fn criterion3() -> Verdict {
    let mods = corpus();
    let mut rebuild_fail = Vec::new();
    for nm in &mods {
        let g = build_catgroup(&nm.module);
        match catgroup_to_crossed(&g) {
            Ok(back) if back == nm.module && build_catgroup(&back) == g => {}
            _ => rebuild_fail.push(nm.name.clone()),
        }
    }
    let (mut pairs, mut morphisms, mut bad) = (0, 0, Vec::new());
    for a in &mods {
        if a.module.pi0().module.order() > 2 {
            continue;
        }
        for b in &mods {
            if b.module.pi1().module.order() > 4 || a.module.gamma() != b.module.gamma() {
                continue;
            }
            pairs += 1;
            let Ok(mors) = enumerate_morphisms(&a.module, &b.module, GUARD) else {
                bad.push(format!("{} -> {}: enumeration", a.name, b.name));
                continue;
            };
            for mor in &mors {
                morphisms += 1;
                let f = morphism_to_functor(mor, &a.module, &b.module);
                let ok = matches!(functor_to_morphism(&f, &a.module, &b.module), Ok(back) if back == *mor && morphism_to_functor(&back, &a.module, &b.module) == f);
                if !ok {
                    bad.push(format!("{} -> {}", a.name, b.name));
                }
            }
        }
    }
    verdict(
        rebuild_fail.is_empty() && bad.is_empty() && morphisms > 0,
        format!("{} categories rebuilt, {pairs} pairs, {morphisms} morphisms, failing {rebuild_fail:?} {bad:?}", mods.len()),
    )
}

fn criterion4() -> Verdict {
    let g1 = Arc::new(FiniteGroup::trivial());
    let groups: Vec<Arc<FiniteGroup>> = vec![
        Arc::new(FiniteGroup::cyclic(1)),
        Arc::new(FiniteGroup::cyclic(2)),
        Arc::new(FiniteGroup::cyclic(3)),
        Arc::new(FiniteGroup::cyclic(4)),
        Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))),
    ];
    let mut mods: Vec<Arc<GammaModule>> = Vec::new();
    for g in &groups {
        mods.push(Arc::new(GammaModule::new(GammaAction::trivial(g1.clone(), g.clone())).unwrap()));
        for a in involutions_preserving(g, &[]) {
            mods.push(Arc::new(GammaModule::new(GammaAction::involution(g.clone(), &a).unwrap()).unwrap()));
        }
    }
    let (mut pairs, mut bad) = (0, 0);
    for q in &mods {
        for b in mods.iter().filter(|b| b.gamma() == q.gamma()) {
            pairs += 1;
            match h2(q, b, GUARD) {
                Ok(h) if h.agree == Some(true) && h.brute.as_ref().is_some_and(|br| br.invariants == h.snf.invariants && representatives_compatible(&h.snf, br)) => {}
                _ => bad += 1,
            }
        }
    }
    let z2 = module(2, &[], &g1);
    let order = h2_brute(&z2, &z2, GUARD).map(|h| h.class_count()).unwrap_or(0);
    verdict(bad == 0 && order == 2, format!("{pairs} (Q, B) pairs over {} Γ-modules, {bad} disagreeing; |H²(ℤ/2, ℤ/2)| = {order}", mods.len()))
}

fn criterion5() -> Verdict {
    let g1 = Arc::new(FiniteGroup::trivial());
    let q = module(2, &[], &g1);
    let ty = FunctorType { objects: vec![0, 1], f: vec![0] };
    let target = SearchTarget::reduced(&Cochain3::zero(q.clone(), q.clone()).unwrap()).unwrap();
    let classes = homotopy_classes(&dis_cochain(&q), &target, &ty, GUARD).map(|h| h.class_count()).unwrap_or(usize::MAX);
    let h2_order = h2_brute(&q, &q, GUARD).map(|h| h.class_count()).unwrap_or(0);
    let mut h = Cochain3::zero(q.clone(), q.clone()).unwrap();
    h.set_braid(1, 1, 1);
    let obstructed = SearchTarget::reduced(&h).ok().and_then(|t| homotopy_classes(&dis_cochain(&q), &t, &ty, GUARD).ok()).map(|h| h.class_count());
    verdict(
        classes == 2 && h2_order == 2 && obstructed == Some(0),
        format!("{classes} homotopy classes, |H²| = {h2_order}; obstructed target: {} classes", obstructed.map_or("error".to_string(), |n| n.to_string())),
    )
}

fn criterion6() -> Verdict {
    let g1 = Arc::new(FiniteGroup::trivial());
    let g2 = Arc::new(FiniteGroup::cyclic(2));
    let neg4 = [0, 3, 2, 1];
    let id2 = [0, 1];
    let id4 = [0, 1, 2, 3];
    let ab = |b: usize, dg: usize, d: Vec<usize>, act: Option<(Vec<usize>, Vec<usize>)>| xmodcat::corpus::abelian_module(b, dg, d, &vec![vec![0; dg]; dg], act).unwrap();
    let cases = vec![
        ("B=ℤ/2, Q=ℤ/2, Γ=1", ab(2, 1, vec![0, 0], None), module(2, &[], &g1), vec![0, 0]),
        ("B=ℤ/2, Q=ℤ/4, Γ=1", ab(2, 1, vec![0, 0], None), module(4, &[], &g1), vec![0; 4]),
        ("B=ℤ/4, Q=ℤ/2, Γ=1", ab(4, 1, vec![0; 4], None), module(2, &[], &g1), vec![0, 0]),
        ("B=ℤ/2 → ℤ/2 iso, Q=ℤ/2, Γ=1", ab(2, 2, vec![0, 1], None), module(2, &[], &g1), vec![0, 0]),
        ("B=ℤ/2 → ℤ/4, Q=ℤ/2, ψ=id, Γ=1", ab(2, 4, vec![0, 2], None), module(2, &[], &g1), vec![0, 1]),
        ("B=ℤ/4 (−1), Q=ℤ/2, Γ=ℤ/2", ab(4, 1, vec![0; 4], Some((neg4.to_vec(), vec![0]))), module(2, &id2, &g2), vec![0, 0]),
        ("B=ℤ/2, Q=ℤ/4 (−1), Γ=ℤ/2", ab(2, 1, vec![0, 0], Some((id2.to_vec(), vec![0]))), module(4, &neg4, &g2), vec![0; 4]),
        ("B=ℤ/4 (−1), Q=ℤ/4, Γ=ℤ/2", ab(4, 1, vec![0; 4], Some((neg4.to_vec(), vec![0]))), module(4, &id4, &g2), vec![0; 4]),
    ];
    let (mut lines, mut ok, mut nonsplit) = (Vec::new(), true, 0);
    for (name, m, q, psi) in cases {
        let psi = GroupHom::new_unchecked(q.group().clone(), m.pi0().module.group().clone(), psi);
        match schreier_bijection_check(&m, &q, &psi, GUARD) {
            Ok(s) => {
                ok &= s.passed() && s.functor_classes == s.extension_classes;
                nonsplit += usize::from(s.extension_classes > 1);
                lines.push(format!("{name}: {}={}", s.functor_classes, s.extension_classes));
            }
            Err(e) => {
                ok = false;
                lines.push(format!("{name}: {e}"));
            }
        }
    }
    let n = lines.len();
    verdict(ok && n >= 6 && nonsplit > 0, format!("{n} scenarios, {nonsplit} with more than one class: {}", lines.join("; ")))
}

fn criterion7() -> Verdict {
    let g1 = Arc::new(FiniteGroup::trivial());
    let q = module(2, &[], &g1);
    let z2_0 = xmodcat::corpus::abelian_module(2, 1, vec![0, 0], &[vec![0]], None).unwrap();
    let iso = xmodcat::corpus::abelian_module(2, 2, vec![0, 1], &[vec![0, 0], vec![0, 0]], None).unwrap();
    let zero = |m: &xmodcat::crossed::ValidatedModule| GroupHom::zero(q.group().clone(), m.pi0().module.group().clone());
    let (mut count, mut invariants) = (0, Vec::new());
    if let Ok(c @ Classification::Classes { .. }) = classify(&z2_0, &q, &zero(&z2_0), GUARD) {
        count = c.count();
        if let Classification::Classes { representatives, .. } = &c {
            invariants = representatives.iter().map(middle_invariants).collect();
            invariants.sort();
        }
    }
    let iso_count = classify(&iso, &q, &zero(&iso), GUARD).map(|c| c.count()).unwrap_or(0);
    verdict(
        count == 2 && invariants == vec![vec![2, 2], vec![4]] && iso_count == 1,
        format!("(ℤ/2, 0, 0): {count} classes with E invariants {invariants:?}; d iso: {iso_count} class"),
    )
}

fn criterion8() -> Verdict {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<_> = std::fs::read_dir(&dir).unwrap().filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.extension().is_some_and(|x| x == "json")).collect();
    files.sort();
    let exe = env!("CARGO_BIN_EXE_xmodcat");
    let tmp = std::env::temp_dir().join(format!("xmodcat-det-{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let mut differing = Vec::new();
    for f in &files {
        let mut first: Option<(Vec<u8>, Vec<u8>, Option<i32>)> = None;
        for threads in [1, 2, 8] {
            for run in 0..3 {
                let out_path = tmp.join(format!("{threads}-{run}.json"));
                let out = Command::new(exe).arg("run").arg(f).arg("--threads").arg(threads.to_string()).arg("--json").arg(&out_path).output().unwrap();
                let report = std::fs::read(&out_path).unwrap_or_default();
                let got = (out.stdout, report, out.status.code());
                match &first {
                    None => first = Some(got),
                    Some(x) if *x == got => {}
                    Some(_) => differing.push(f.file_name().unwrap().to_string_lossy().into_owned()),
                }
            }
        }
    }
    let _ = std::fs::remove_dir_all(&tmp);
    differing.dedup();
    verdict(differing.is_empty() && !files.is_empty(), format!("{} scenarios × threads 1, 2, 8 × 3 runs, differing {differing:?}", files.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict, Duration); 8] = [
        ("axiom suite", criterion1, Duration::from_secs(1)),
        ("builder coherence and mutations", criterion2, Duration::from_secs(60)),
        ("crossed module and categorical group dictionary", criterion3, Duration::from_secs(120)),
        ("H² brute force against SNF", criterion4, Duration::from_secs(120)),
        ("homotopy classes of Dis(ℤ/2) → 𝔾(0)", criterion5, Duration::from_secs(60)),
        ("Schreier bijection", criterion6, Duration::from_secs(300)),
        ("classification of extensions", criterion7, Duration::from_secs(30)),
        ("CLI determinism", criterion8, Duration::from_secs(600)),
    ];
    let mut all = true;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let v = run();
        let dt = t.elapsed();
        let ok = v.ok && dt <= budget;
        all &= ok;
        println!(
            "criterion {} [{}] {name}: {} ({:.2} s, budget {} s)",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            v.detail,
            dt.as_secs_f64(),
            budget.as_secs()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
