//! Ten end-to-end criteria, each reported on one line.

use std::process::Command;
use std::time::{Duration, Instant};

use alexmod::diagrams::{satoh_consistent, GaussCode};
use alexmod::ext::{dm, dm_embedded, ext, finite_structure, Limits};
use alexmod::fixtures;
use alexmod::groups::GroupPresentation;
use alexmod::laurent::ZPoly;
use alexmod::modules::{is_symmetric_poly, PresentedModule, DEFAULT_PRIMES};
use alexmod::realization::{
    classify, e2_generators, general_genus_lower_bound, natural_genus, normalized_presentation, realize,
    ribbon_genus_lower_bound, RealizationInput,
};
use alexmod::words::{Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn z(low: i64, c: &[i64]) -> ZPoly {
    ZPoly::z(low, c)
}

fn lim() -> Limits {
    Limits::default()
}

fn virtual_example() -> Check {
    let code = fixtures::code(fixtures::VIRTUAL_EXAMPLE);
    let m = code.wirtinger().alexander_module(0).map_err(|e| e.to_string())?;
    let r = m.report(&DEFAULT_PRIMES);
    ensure(r.corank == Some(1), format!("corank {:?}", r.corank))?;
    ensure(r.beta == 0, format!("beta {}", r.beta))?;
    ensure(r.tau == Some(1), format!("tau {:?}", r.tau))?;
    ensure(r.q_factors == vec!["t - 1".to_string()], format!("Q factors {:?}", r.q_factors))?;
    ensure(r.fp_factors[&2] == vec!["t^2 + 1".to_string()], format!("F2 factors {:?}", r.fp_factors[&2]))?;
    let d = dm(&m, &lim()).map_err(|e| e.to_string())?;
    let k = finite_structure(&PresentedModule::cyclic(&[ZPoly::t_minus_one(), ZPoly::z_int(2)]), &lim()).unwrap();
    ensure(d.order() == 2 && d.battery() == k.battery(), format!("DM {:?}", d.battery()))?;
    let e = e2_generators(&m, &lim()).map_err(|e| e.to_string())?;
    ensure(e == 1, format!("e(E2M) = {e}"))?;
    let c = classify(&m, Some(2), None, &lim()).map_err(|e| e.to_string())?;
    ensure(c.virtual_link, "virtual realizability")?;
    ensure(c.not_classical, "not-classical witness")?;
    Ok("corank 1, beta 0, tau 1, Q [t - 1], F2 [t^2 + 1], DM = Z/2 with t = 1, e = 1".into())
}

fn round_trip_one(m: &PresentedModule, partition: Vec<usize>) -> Result<(), String> {
    let out = realize(&RealizationInput { module: m.clone(), partition }).map_err(|e| e.to_string())?;
    let j = out.group.alexander_module(0).map_err(|e| e.to_string())?;
    ensure(j.relations() == &out.b_prime, "deleted-row Jacobian differs from B'")?;
    ensure(out.diskarc.wirtinger() == out.group, "disk-arc group differs")?;
    ensure(out.group.abelianization_rank() == 1 + m.corank().unwrap(), "abelianization rank")
}

fn round_trip() -> Check {
    for (name, m, r) in fixtures::realization_matrices() {
        let mut p = vec![0; r];
        p[0] = natural_genus(&m).map_err(|e| e.to_string())?;
        round_trip_one(&m, p).map_err(|e| format!("{name}: {e}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..100 {
        let m = fixtures::random_cokernel_free(&mut rng, 3, 4, 3, 3);
        let r = m.corank().unwrap() + 1;
        let g = natural_genus(&m).unwrap();
        let mut p = vec![0; r];
        for _ in 0..g {
            p[rng.gen_range(0..r)] += 1;
        }
        round_trip_one(&m, p).map_err(|e| format!("random matrix {i} {}: {e}", m.to_json()))?;
    }
    Ok("6 fixtures and 100 random matrices".into())
}

fn sharpness() -> Check {
    let mut cases = vec![
        ("[t+1, 3]", fixtures::plus_one_mod(3), 1),
        ("[(t-1)^2, 2(t-1)]", fixtures::example_module(), 2),
    ];
    for r in 1..=3 {
        cases.push(("free", PresentedModule::free(r - 1), 0));
    }
    for (name, m, g) in cases {
        let n = normalized_presentation(&m, &lim()).map_err(|e| e.to_string())?;
        ensure(!n.gap, format!("{name}: gap flag"))?;
        let r = n.module.corank().unwrap() + 1;
        let mut p = vec![0; r];
        p[0] = n.achieved;
        let out = realize(&RealizationInput { module: n.module.clone(), partition: p }).map_err(|e| e.to_string())?;
        ensure(out.genus() == g && n.bound == g, format!("{name}: genus {} bound {}", out.genus(), n.bound))?;
        ensure(out.group.alexander_module(0).unwrap().battery_eq(&m, &DEFAULT_PRIMES), format!("{name}: module changed"))?;
    }
    Ok("g = 1, 2, 0, 0, 0 with no gap".into())
}

fn random_word(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Word {
    Word::new((0..len).map(|_| Letter::new(rng.gen_range(0..n), if rng.gen_bool(0.5) { 1 } else { -1 })))
}

fn column_sums_vanish(g: &GroupPresentation) -> bool {
    let j = g.jacobian();
    (0..j.cols()).all(|c| j.col(c).iter().fold(ZPoly::z_zero(), |acc, p| &acc + p).is_zero())
}

fn fox_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let n = rng.gen_range(1..=6);
        let len = rng.gen_range(0..=40);
        let w = random_word(&mut rng, n, len);
        ensure(w.fox_identity_holds(n), format!("word {i}: {w}"))?;
    }
    let mut groups: Vec<GroupPresentation> = fixtures::diagrams().into_iter().map(|(_, c)| c.wirtinger()).collect();
    groups.push(fixtures::example_group());
    groups.push(fixtures::hopf_group());
    for _ in 0..50 {
        let (k, r) = (rng.gen_range(0..=6), rng.gen_range(1..=3));
        groups.push(GaussCode::random(&mut rng, k, r).wirtinger());
        let m = fixtures::random_cokernel_free(&mut rng, 3, 4, 3, 3);
        let mut p = vec![0; m.corank().unwrap() + 1];
        p[0] = natural_genus(&m).unwrap();
        groups.push(realize(&RealizationInput { module: m, partition: p }).unwrap().group);
    }
    for g in &groups {
        ensure(column_sums_vanish(g), format!("column sums of {g}"))?;
    }
    Ok(format!("1000 words, {} presentations", groups.len()))
}

fn ext_suite() -> Check {
    let l = lim();
    let koszul = PresentedModule::cyclic(&[ZPoly::z_int(2), ZPoly::t_minus_one()]);
    let e2 = ext(&fixtures::example_module(), 2, &l).map_err(|e| e.to_string())?;
    ensure(e2.module.battery_eq(&koszul, &DEFAULT_PRIMES), "E2 of the example")?;
    ensure(e2.sub.verify(), "E2 certificate")?;
    for r in 1..=3 {
        let f = PresentedModule::free(r);
        ensure(ext(&f, 0, &l).unwrap().module.battery_eq(&f, &DEFAULT_PRIMES), "E0 of free")?;
        for q in 1..=2 {
            ensure(ext(&f, q, &l).unwrap().module.gens() == 0, format!("E{q} of free"))?;
        }
    }
    for a in [3, 9] {
        let m = fixtures::plus_one_mod(a);
        ensure(ext(&m, 2, &l).unwrap().module.battery_eq(&m, &DEFAULT_PRIMES), format!("E2 of (t+1, {a})"))?;
        ensure(ext(&m, 1, &l).unwrap().module.gens() == 0, format!("E1 of (t+1, {a})"))?;
    }
    for f in [z(0, &[1, -1, 1]), z(0, &[-1, 2]), z(0, &[1, -3, 1])] {
        let m = PresentedModule::cyclic(&[f.clone()]);
        ensure(ext(&m, 0, &l).unwrap().module.gens() == 0, "E0 of a cyclic torsion module")?;
        ensure(ext(&m, 1, &l).unwrap().module.battery_eq(&m, &DEFAULT_PRIMES), format!("E1 of Λ/({})", f.to_text()))?;
        ensure(ext(&m, 2, &l).unwrap().module.gens() == 0, "E2 of a principal module")?;
    }
    let mut modules: Vec<PresentedModule> = fixtures::module_grid().into_iter().map(|(_, m)| m).collect();
    modules.extend(fixtures::realization_matrices().into_iter().map(|(_, m, _)| m));
    modules.push(fixtures::code(fixtures::VIRTUAL_EXAMPLE).wirtinger().alexander_module(0).unwrap());
    modules.push(PresentedModule::cyclic(&[z(0, &[1, 1, 1]), ZPoly::z_int(4)]));
    for m in &modules {
        let a = dm(m, &l).map_err(|e| e.to_string())?;
        let b = dm_embedded(m, &l).map_err(|e| e.to_string())?;
        ensure(a.battery() == b.battery(), format!("DM routes differ on {}", m.to_json()))?;
        ensure(a.dual().order() == a.order(), "dual order")?;
        ensure(a.dual().dual().battery() == a.battery(), "double dual")?;
    }
    Ok(format!("closed forms and DM agreement on {} modules", modules.len()))
}

fn classification() -> Check {
    let l = lim();
    let c = classify(&fixtures::example_module(), Some(2), None, &l).unwrap();
    ensure(c.virtual_link, "example accepted")?;
    let b = fixtures::two_t_minus_one_mod(5).power(2);
    let c = classify(&b, Some(1), None, &l).unwrap();
    ensure(!c.virtual_link && c.e_e2 == Some(2), "(2t-1, 5)^2 rejected")?;
    let a = finite_structure(&fixtures::two_t_minus_one_mod(5), &l).unwrap();
    for n in [2, 3] {
        let g = a.power(n).dual().min_generators();
        ensure(g == n, format!("min_generators of dual power {n} = {g}"))?;
    }
    let expected = ["zero", "trefoil", "figure-eight"];
    for (name, m) in fixtures::module_grid() {
        let c = classify(&m, None, None, &l).unwrap();
        let direct = m.lambda_rank() == 0 && dm_embedded(&m, &l).unwrap().is_zero();
        ensure(c.beta_zero_ribbon == direct, format!("{name}: verdict {}", c.beta_zero_ribbon))?;
        ensure(c.beta_zero_ribbon == expected.contains(&name), format!("{name}: expected list"))?;
    }
    Ok("virtual accept/reject, generator counts and the 10-module grid".into())
}

fn genus_bounds() -> Check {
    let l = lim();
    for r in 1..=2 {
        for n in 1..=3 {
            let m = fixtures::separating_family(n, r);
            let rb = ribbon_genus_lower_bound(&m, &l).unwrap();
            let gb = general_genus_lower_bound(&m, &l).unwrap();
            ensure(rb == n, format!("ribbon bound {rb} for n={n} r={r}"))?;
            ensure(gb.bound == n.div_ceil(2) && !gb.fallback, format!("general bound {} for n={n} r={r}", gb.bound))?;
            ensure(gb.bound <= rb, "general exceeds ribbon")?;
        }
    }
    let gb = general_genus_lower_bound(&fixtures::plus_one_mod(3), &l).unwrap();
    ensure(gb.bound == 0, format!("general bound of (t+1, 3) = {}", gb.bound))?;
    Ok("ribbon n and general ceil(n/2) for n = 1..3, r = 1, 2".into())
}

fn classical() -> Check {
    let tre = fixtures::code(fixtures::TREFOIL).wirtinger().alexander_module(0).unwrap();
    let fig = fixtures::code(fixtures::FIGURE_EIGHT).wirtinger().alexander_module(0).unwrap();
    let (dt, df) = (tre.alexander_polynomial(0), fig.alexander_polynomial(0));
    ensure(dt == z(0, &[1, -1, 1]), format!("trefoil {}", dt.to_text()))?;
    ensure(df == z(0, &[1, -3, 1]), format!("figure-eight {}", df.to_text()))?;
    ensure(is_symmetric_poly(&dt) && is_symmetric_poly(&df), "symmetry")?;
    let unknot = GaussCode::trivial(1).wirtinger().alexander_module(0).unwrap();
    ensure(unknot.battery_eq(&PresentedModule::zero(), &DEFAULT_PRIMES), "unknot")?;
    for r in 2..=4 {
        let m = GaussCode::trivial(r).wirtinger().alexander_module(0).unwrap();
        ensure(m.battery_eq(&PresentedModule::free(r - 1), &DEFAULT_PRIMES), format!("trivial {r}-link"))?;
    }
    let lm1 = PresentedModule::cyclic(&[ZPoly::t_minus_one()]);
    ensure(fixtures::hopf_group().alexander_module(0).unwrap().battery_eq(&lm1, &DEFAULT_PRIMES), "Hopf group")?;
    let hopf = fixtures::code(fixtures::HOPF).wirtinger().alexander_module(0).unwrap();
    ensure(hopf.battery_eq(&lm1, &DEFAULT_PRIMES), "Hopf diagram")?;
    Ok("trefoil t^2 - t + 1, figure-eight t^2 - 3*t + 1, unknot, trivial links, Hopf".into())
}

fn satoh() -> Check {
    for (name, code) in fixtures::diagrams() {
        ensure(satoh_consistent(&code), name)?;
        ensure(code.satoh().wirtinger().gens() == code.wirtinger().gens(), name)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..100 {
        let (k, r) = (rng.gen_range(0..=6), rng.gen_range(1..=3));
        let code = GaussCode::random(&mut rng, k, r);
        ensure(satoh_consistent(&code), format!("random code {i}: {}", code.to_text()))?;
    }
    let fig = fixtures::example_diskarc();
    ensure(fig.wirtinger() == fixtures::example_group(), "two-disk fixture")?;
    Ok("8 fixtures and 100 random codes".into())
}

fn determinism() -> Check {
    let bin = env!("CARGO_BIN_EXE_alexmod");
    let run = || {
        Command::new(bin).args(["selftest", "--seed", "5"]).output().map_err(|e| e.to_string())
    };
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), format!("selftest exit {:?}", a.status.code()))?;
    ensure(a.stdout == b.stdout, "selftest output differs between runs")?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 10] = [
        ("virtual example end to end", virtual_example, Duration::from_secs(5)),
        ("round-trip realization", round_trip, Duration::from_secs(60)),
        ("genus sharpness", sharpness, Duration::from_secs(60)),
        ("Fox identity", fox_identity, Duration::from_secs(60)),
        ("Ext suite", ext_suite, Duration::from_secs(60)),
        ("classification verdicts", classification, Duration::from_secs(60)),
        ("genus bounds", genus_bounds, Duration::from_secs(60)),
        ("classical regression", classical, Duration::from_secs(60)),
        ("Satoh consistency", satoh, Duration::from_secs(60)),
        ("determinism", determinism, Duration::from_secs(60)),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = f();
        let dt = t.elapsed();
        let result = match result {
            Ok(d) if dt > *limit => Err(format!("{d}; took {dt:?}, limit {limit:?}")),
            other => other,
        };
        match result {
            Ok(detail) => println!("criterion {:2} PASS  {name}: {detail} ({:.2?})", i + 1, dt),
            Err(why) => {
                failures += 1;
                println!("criterion {:2} FAIL  {name}: {why} ({:.2?})", i + 1, dt);
            }
        }
    }
    let total = start.elapsed();
    if total > Duration::from_secs(300) {
        failures += 1;
        println!("total runtime {total:?} exceeds 5 minutes");
    }
    println!("acceptance: {} of 10 criteria passed in {:.2?}", 10 - failures.min(10), total);
    if failures > 0 {
        std::process::exit(1);
    }
}
