//! Acceptance criteria 1-13. Runs without the libtest harness so that the
//! one-line verdict per criterion always reaches the output.
//!
//! Arithmetic is exact everywhere, so every comparison has zero tolerance.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use polywalk::cdg::{move_circuit_vectors, pp_bounded_edge_test, pp_fixed_circuit_test, Clustering};
use polywalk::circuits::{circuits_rank_method, circuits_support_oracle, is_circuit, maximal_step, Circuit};
use polywalk::ecw::{
    elementary_cone_condition, elementary_cones_enumerate, is_triangle_or_parallelogram, recognize_nd_parallelotope,
    symmetric_inner_cone_condition, two_faces, ElementaryArrangement,
};
use polywalk::exactla::{frac, is_totally_unimodular, max_abs_subdeterminant, rat_vec, RatVector, Rational};
use polywalk::families::*;
use polywalk::polyhedron::Polyhedron;
use polywalk::walks::{all_steps_reversible, classify_hierarchy, walk, Directive, Level, DEFAULT_BUDGET};
use polywalk::Error;

type Verdict = Result<String, String>;

fn level(p: &Polyhedron) -> std::result::Result<Level, String> {
    match classify_hierarchy(p, DEFAULT_BUDGET) {
        Ok(c) => c.level().ok_or_else(|| format!("{}: unknown at budget", common::label(p))),
        Err(e) => Err(format!("{}: {e}", common::label(p))),
    }
}

fn dirs(p: &Polyhedron) -> BTreeSet<RatVector> {
    p.circuit_directions().unwrap().iter().cloned().collect()
}

fn set(vs: &[&[i64]]) -> BTreeSet<RatVector> {
    vs.iter().map(|v| rat_vec(v)).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_planar_pins() -> Verdict {
    let want = [Level::Gcw, Level::Icw, Level::Vcw, Level::Ecw];
    let four = set(&[&[0, 1], &[1, -1], &[1, 0], &[1, 1]]);
    let two = set(&[&[0, 1], &[1, 0]]);
    for (which, lv) in [Fig2::A, Fig2::B, Fig2::C, Fig2::D].into_iter().zip(want) {
        let p = fig2(which);
        let got = level(&p)?;
        ensure(got == lv, || format!("{which:?}: level {got}, expected {lv}"))?;
        let expect = if which == Fig2::D { &two } else { &four };
        ensure(dirs(&p) == *expect, || format!("{which:?}: circuits {:?}", dirs(&p)))?;
    }
    Ok("levels GCW, ICW, VCW, ECW; circuit sets exact".into())
}

fn c2_fig3_pin() -> Verdict {
    let p = fig3_polytope();
    let c = Circuit::from_direction(&p, &rat_vec(&[1, 1, 0])).map_err(|e| e.to_string())?;
    let (y, alpha) = maximal_step(&p, &rat_vec(&[0, 0, 0]), &c).map_err(|e| e.to_string())?;
    let want = vec![frac(1, 2), frac(1, 2), Rational::from(0)];
    ensure(y == want && alpha == frac(1, 2), || format!("step gave {y:?}, alpha {alpha}"))?;
    let lv = level(&p)?;
    ensure(lv == Level::Gcw, || format!("level {lv}"))?;
    Ok("step (1/2,1/2,0) with alpha 1/2; GCW".into())
}

/// Independent check: the bipartite support graph of an `m x n` flow has no
/// cycle (union-find over supply and demand nodes).
fn support_is_forest(m: usize, n: usize, x: &[Rational]) -> bool {
    let mut parent: Vec<usize> = (0..m + n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for i in 0..m {
        for j in 0..n {
            if x[i * n + j] != 0 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, m + j));
                if a == b {
                    return false;
                }
                parent[a] = b;
            }
        }
    }
    true
}

fn c3_transportation_pin() -> Verdict {
    let p = transportation(&TransportationSpec::new(vec![1, 2, 2], vec![1, 2, 2])).map_err(|e| e.to_string())?;
    let x = rat_vec(&[0, 1, 0, 1, 0, 1, 0, 1, 1]);
    let g = rat_vec(&[1, -1, 0, -1, 1, 0, 0, 0, 0]);
    ensure(p.is_vertex_point(&x), || "x is not a vertex".into())?;
    ensure(support_is_forest(3, 3, &x), || "support of x has a cycle".into())?;
    ensure(is_circuit(&p, &g), || "g is not a circuit".into())?;
    let c = Circuit::from_direction(&p, &g).map_err(|e| e.to_string())?;
    let (y, alpha) = maximal_step(&p, &x, &c).map_err(|e| e.to_string())?;
    let xg: RatVector = x.iter().zip(&g).map(|(a, b)| a + b).collect();
    ensure(y == xg && alpha == 1, || format!("step gave {y:?}, alpha {alpha}"))?;
    ensure(p.contains(&y) && polywalk::exactla::is_integral(&y), || "x+g infeasible or fractional".into())?;
    ensure(!p.is_vertex_point(&y), || "x+g is a vertex".into())?;
    ensure(!support_is_forest(3, 3, &y), || "support of x+g is acyclic".into())?;
    let lv = level(&p)?;
    ensure(lv == Level::Icw, || format!("level {lv}, expected ICW"))?;
    Ok("vertex x, circuit g, x+g integral non-vertex with cyclic support; ICW".into())
}

fn c4_matroid_pin() -> Verdict {
    let p = matroid_polytope(&MatroidSpec::uniform(4, 3).unwrap()).map_err(|e| e.to_string())?;
    let g = rat_vec(&[2, -1, -1, -1]);
    ensure(dirs(&p).contains(&g), || "(2,-1,-1,-1) missing from the circuits".into())?;
    let w = walk(&p, &rat_vec(&[0, 1, 1, 1]), &[Directive::Circuit(g)]).map_err(|e| e.to_string())?;
    let want = vec![Rational::from(1), frac(1, 2), frac(1, 2), frac(1, 2)];
    ensure(*w.end() == want, || format!("walk ended at {:?}", w.end()))?;
    let lv = level(&p)?;
    ensure(lv == Level::Gcw, || format!("level {lv}"))?;
    Ok("circuit present, walk reaches (1,1/2,1/2,1/2); GCW".into())
}

fn nondecreasing(len: usize, max: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u64>| {
                let lo = v.last().copied().unwrap_or(1);
                (lo..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn tu_family_check(p: &Polyhedron, tu_cache: &mut std::collections::HashMap<String, bool>) -> std::result::Result<(), String> {
    let name = common::label(p);
    let m = p.constraint_matrix();
    let key = format!("{m}");
    let tu = match tu_cache.get(&key) {
        Some(&t) => t,
        None => {
            let t = is_totally_unimodular(&m).map_err(|e| format!("{name}: {e}"))?.is_tu;
            tu_cache.insert(key, t);
            t
        }
    };
    ensure(tu, || format!("{name}: not TU"))?;
    for g in p.circuit_directions().map_err(|e| format!("{name}: {e}"))? {
        ensure(g.iter().all(|x| *x == 0 || *x == 1 || *x == -1), || format!("{name}: circuit {g:?} outside -1..1"))?;
    }
    let lv = level(p)?;
    ensure(lv >= Level::Icw, || format!("{name}: level {lv}"))?;
    let zero_one = p.vertices().unwrap().iter().all(|v| v.point.iter().all(|x| *x == 0 || *x == 1));
    ensure(!zero_one || lv >= Level::Vcw, || format!("{name}: 0/1 polytope at level {lv}"))?;
    Ok(())
}

fn c5_tu_suite() -> Verdict {
    let mut cache = std::collections::HashMap::new();
    let mut count = 0;
    for m in 1..=3 {
        for n in 1..=3 {
            for u in nondecreasing(m, 3) {
                for v in nondecreasing(n, 3) {
                    if u.iter().sum::<u64>() != v.iter().sum::<u64>() {
                        continue;
                    }
                    let p = transportation(&TransportationSpec::new(u.clone(), v)).map_err(|e| e.to_string())?;
                    tu_family_check(&p, &mut cache)?;
                    count += 1;
                }
            }
        }
    }
    let mut pp = 0;
    for spec in partition_specs(5, 3, true) {
        tu_family_check(&partition_bounded(&spec).map_err(|e| e.to_string())?, &mut cache)?;
        pp += 1;
    }
    for spec in fixed_partition_specs(5, 3) {
        tu_family_check(&partition_fixed(&spec).map_err(|e| e.to_string())?, &mut cache)?;
        pp += 1;
    }
    Ok(format!("{count} transportation and {pp} partition instances"))
}

fn c6_fixed_partition() -> Verdict {
    let specs = fixed_partition_specs(5, 3);
    for spec in &specs {
        let p = partition_fixed(spec).map_err(|e| e.to_string())?;
        let lv = level(&p)?;
        ensure(lv == Level::Ecw, || format!("{}: level {lv}", common::label(&p)))?;
        for g in p.circuit_directions().map_err(|e| e.to_string())? {
            ensure(pp_fixed_circuit_test(spec.n_items, spec.k(), g), || {
                format!("{}: circuit {g:?} is not a cyclic exchange", common::label(&p))
            })?;
        }
    }
    Ok(format!("{} fixed-size specs ECW, all circuits cyclic exchanges", specs.len()))
}

/// Pairs on which the edge test and skeleton adjacency disagree.
fn edge_disagreements(spec: &PartitionSpec) -> std::result::Result<(usize, usize), String> {
    let p = partition_bounded(spec).map_err(|e| e.to_string())?;
    let sk = p.skeleton().map_err(|e| e.to_string())?;
    let cl: Vec<Clustering> = sk
        .vertices
        .iter()
        .map(|v| Clustering::from_vector(&v.point, spec.k()).ok_or_else(|| format!("fractional vertex {:?}", v.point)))
        .collect::<std::result::Result<_, _>>()?;
    let mut bad = 0;
    let mut pairs = 0;
    for i in 0..cl.len() {
        for j in i + 1..cl.len() {
            pairs += 1;
            if pp_bounded_edge_test(spec, &cl[i], &cl[j]).map_err(|e| e.to_string())? != sk.adjacent(i, j) {
                bad += 1;
            }
        }
    }
    Ok((bad, pairs))
}

fn c7_bounded_partition() -> Verdict {
    let mut pairs = 0;
    let specs = partition_specs(5, 3, true);
    for spec in &specs {
        let (bad, n) = edge_disagreements(spec)?;
        ensure(bad == 0, || format!("edge test disagrees on {bad} pairs for {spec:?}"))?;
        pairs += n;
    }
    let raw = partition_specs(5, 3, false);
    let mut raw_bad = Vec::new();
    for spec in &raw {
        let (bad, _) = edge_disagreements(spec)?;
        if bad > 0 {
            raw_bad.push(spec.clone());
        }
    }
    ensure(raw_bad.is_empty(), || {
        format!("edge test disagrees on {} of {} raw specs, first {:?}", raw_bad.len(), raw.len(), raw_bad[0])
    })?;
    for n in 1..=4 {
        for k in 1..=3 {
            let spec = PartitionSpec::bounded(n, vec![0; k], vec![n; k]);
            let p = partition_bounded(&spec).map_err(|e| e.to_string())?;
            let rank: Vec<RatVector> = circuits_rank_method(&p).map_err(|e| e.to_string())?.into_iter().map(|c| c.g).collect();
            let moves = move_circuit_vectors(n, k);
            ensure(rank == moves, || format!("n={n} k={k}: {} rank circuits vs {} move vectors", rank.len(), moves.len()))?;
        }
    }
    let witness = specs
        .iter()
        .filter(|s| s.lower.iter().zip(&s.upper).any(|(l, u)| u >= &(l + 2)))
        .find(|s| matches!(level(&partition_bounded(s).unwrap()), Ok(Level::Vcw)))
        .ok_or_else(|| "no spec with a free cluster classifies VCW".to_string())?;
    Ok(format!(
        "edge test exact on {pairs} pairs over {} tightened and {} raw specs; circuit test exact for n<=4, k<=3; VCW witness {witness:?}",
        specs.len(),
        raw.len()
    ))
}

fn c8_oracle() -> Verdict {
    let mut fixtures = common::battery();
    fixtures.extend(random_integer_systems(50, seed_from_env(common::SEED)));
    let mut skipped = Vec::new();
    let mut checked = 0;
    for p in &fixtures {
        let oracle = match circuits_support_oracle(p) {
            Ok(o) => o,
            Err(Error::SizeLimitExceeded { .. }) => {
                skipped.push(common::label(p));
                continue;
            }
            Err(e) => return Err(format!("{}: {e}", common::label(p))),
        };
        let rank = circuits_rank_method(p).map_err(|e| e.to_string())?;
        ensure(rank == oracle, || format!("{}: {} rank vs {} oracle circuits", common::label(p), rank.len(), oracle.len()))?;
        checked += 1;
    }
    ensure(skipped.is_empty(), || format!("oracle guard skipped {skipped:?}"))?;
    Ok(format!("{checked} systems agree"))
}

fn c9_subdeterminant_bound() -> Verdict {
    let mut count = 0;
    for p in common::battery().iter().filter(|p| p.n() <= 12) {
        let delta = max_abs_subdeterminant(&p.constraint_matrix()).map_err(|e| format!("{}: {e}", common::label(p)))?;
        for g in p.circuit_directions().map_err(|e| e.to_string())? {
            let bg = p.bm().mul_vec(g);
            let worst = g.iter().chain(&bg).map(|x| if *x < 0 { -x.clone() } else { x.clone() }).max().unwrap();
            ensure(worst <= delta, || format!("{}: circuit {g:?} exceeds delta {delta}", common::label(p)))?;
            count += 1;
        }
    }
    Ok(format!("{count} circuits within the max subdeterminant"))
}

fn c10_reversibility() -> Verdict {
    let mut n = 0;
    for p in common::battery() {
        let lv = level(&p)?;
        let rev = all_steps_reversible(&p, DEFAULT_BUDGET).map_err(|e| format!("{}: {e}", common::label(&p)))?;
        ensure(rev.reversible == (lv >= Level::Vcw), || {
            format!("{}: level {lv} but reversible = {}", common::label(&p), rev.reversible)
        })?;
        n += 1;
    }
    Ok(format!("{n} fixtures"))
}

fn simple_fixtures() -> Vec<Polyhedron> {
    let mut all = common::battery();
    all.extend(common::random_simple());
    all.into_iter()
        .filter(|p| {
            p.reduced_dim() <= 4
                && p.num_ineq() <= 10
                && matches!(p.is_bounded(), Ok(true))
                && matches!(p.is_simple(), Ok(true))
        })
        .collect()
}

fn c11_three_way() -> Verdict {
    let fixtures = simple_fixtures();
    let random = fixtures.iter().filter(|p| common::label(p).starts_with("random simple")).count();
    let skewed = fixtures.iter().filter(|p| common::label(p).ends_with("skewed")).count();
    ensure(random >= 20, || format!("only {random} random simple polytopes"))?;
    let mut ecw = 0;
    for p in &fixtures {
        let name = common::label(p);
        let e = elementary_cone_condition(p).map_err(|e| format!("{name}: {e}"))?.holds;
        let s = symmetric_inner_cone_condition(p).map_err(|e| format!("{name}: {e}"))?.holds;
        let r = recognize_nd_parallelotope(p).map_err(|e| format!("{name}: {e}"))?.is_ndp;
        let c = level(p)? == Level::Ecw;
        ensure(e == s && s == r && r == c, || format!("{name}: elementary {e}, symmetric {s}, recognized {r}, ECW {c}"))?;
        ecw += usize::from(c);
    }
    Ok(format!("{} simple fixtures ({random} random, {skewed} skewed), {ecw} ECW", fixtures.len()))
}

fn c12_cells_and_circuits() -> Verdict {
    let cases = [fig2(Fig2::A), unit_cube(2), nd_parallelotope(3, 2, None).map_err(|e| e.to_string())?];
    let mut rays = 0;
    for p in &cases {
        let name = common::label(p);
        let circuits = dirs(p);
        for cell in elementary_cones_enumerate(p).map_err(|e| format!("{name}: {e}"))? {
            for g in &cell.generators {
                let (canon, _) = polywalk::exactla::canonical_direction(g).unwrap();
                ensure(circuits.contains(&canon), || format!("{name}: ray {g:?} is not a circuit"))?;
                rays += 1;
            }
        }
        let arr = ElementaryArrangement::of(p);
        for g in &circuits {
            ensure(arr.on_rank_deficient_intersection(p, g), || format!("{name}: circuit {g:?} off the arrangement"))?;
        }
    }
    Ok(format!("{rays} cell rays are circuits; every circuit on a rank n-1 intersection"))
}

fn c13_two_faces() -> Verdict {
    let mut faces = 0;
    let mut polys = 0;
    for p in simple_fixtures() {
        if level(&p)? != Level::Ecw {
            continue;
        }
        let name = common::label(&p);
        if p.reduced_dim() == 2 {
            ensure((3..=4).contains(&p.num_ineq()), || format!("{name}: planar ECW with {} facets", p.num_ineq()))?;
        }
        let sk = p.skeleton().unwrap();
        for f in two_faces(&p).map_err(|e| format!("{name}: {e}"))? {
            let pts: Vec<&RatVector> = f.iter().map(|&i| &sk.vertices[i].point).collect();
            ensure(is_triangle_or_parallelogram(&pts), || format!("{name}: 2-face with {} vertices", pts.len()))?;
            faces += 1;
        }
        polys += 1;
    }
    Ok(format!("{faces} 2-faces over {polys} simple ECW fixtures"))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 13] = [
        ("planar hierarchy pins", c1_planar_pins),
        ("3D 0/1 polytope pin", c2_fig3_pin),
        ("transportation pin", c3_transportation_pin),
        ("matroid pin", c4_matroid_pin),
        ("TU integrality suite", c5_tu_suite),
        ("fixed-size partition ECW", c6_fixed_partition),
        ("bounded-size partition edges and circuits", c7_bounded_partition),
        ("circuit oracle equivalence", c8_oracle),
        ("subdeterminant bound", c9_subdeterminant_bound),
        ("reversibility equivalence", c10_reversibility),
        ("ECW characterizations agree", c11_three_way),
        ("elementary cells and circuits", c12_cells_and_circuits),
        ("2-faces of simple ECW polytopes", c13_two_faces),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match verdict {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
