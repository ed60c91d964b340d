//! Acceptance criteria. Runs sequentially so the timings are meaningful and
//! prints one line per criterion; exits non-zero if any criterion fails.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use princon::certificate::{certify, Check, Subject};
use princon_core::congruence::{
    all_principal, brute_force_con_lattice, brute_force_congruences, congruence_lattice, Principality,
};
use princon_core::enumerate::{enumerate_lattices, enumerate_posets_up_to};
use princon_core::iso::poset_isomorphic;
use princon_core::kit::{find_s8, GadgetS8};
use princon_core::lattice::{downset_lattice, ji_poset, validate_lattice};
use princon_core::pipeline::assemble;
use princon_core::verify::{
    check_color_soundness, check_con_isomorphic, check_embedding_planarity, check_witnesses, is_planar_dimension2,
    is_semimodular,
};
use princon_core::{FiniteLattice, Mode, Poset};

type Verdict = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lattice(labels: &[&str], covers: &[(&str, &str)]) -> FiniteLattice {
    validate_lattice(
        labels.iter().map(|s| s.to_string()).collect(),
        &covers
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect::<Vec<_>>(),
    )
    .unwrap()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn birkhoff() -> Verdict {
    let posets = enumerate_posets_up_to(5).map_err(|e| e.to_string())?;
    let five = posets.iter().filter(|p| p.len() == 5).count();
    ensure(five == 63, || format!("{five} posets with 5 elements, expected 63"))?;
    for p in &posets {
        let d = downset_lattice(p);
        ensure(poset_isomorphic(&ji_poset(&d), p).is_some(), || {
            format!("round trip fails for {:?}", p.labels())
        })?;
    }
    Ok(format!(
        "{} posets with up to 5 elements ({five} with exactly 5)",
        posets.len()
    ))
}

fn congruence_oracle() -> Verdict {
    let mut total = 0;
    for n in 1..=7 {
        for l in enumerate_lattices(n).map_err(|e| e.to_string())? {
            let fast = congruence_lattice(&l);
            let slow = brute_force_con_lattice(&l).map_err(|e| e.to_string())?;
            ensure(fast == slow, || {
                format!("mismatch on a {n}-element lattice {:?}", l.covers())
            })?;
            total += 1;
        }
    }
    ensure(total == 1 + 1 + 1 + 2 + 5 + 15 + 53, || {
        format!("{total} lattices enumerated")
    })?;
    Ok(format!("{total} lattices with up to 7 elements"))
}

fn gadget() -> Verdict {
    let g = find_s8().map_err(|e| e.to_string())?;
    let c = g.colored();
    let l = c.lattice();
    ensure(l.len() == 8, || "not eight elements".into())?;
    ensure(is_semimodular(l), || "not semimodular".into())?;
    ensure(check_embedding_planarity(l).is_ok(), || "drawing not planar".into())?;
    ensure(is_planar_dimension2(l) == Ok(true), || "dimension above 2".into())?;
    check_color_soundness(c).map_err(|e| format!("{e:?}"))?;
    let all = brute_force_congruences(l).map_err(|e| e.to_string())?;
    let con = brute_force_con_lattice(l).map_err(|e| e.to_string())?;
    ensure(con == congruence_lattice(l), || {
        "closure disagrees with brute force".into()
    })?;
    let ji = con.join_irreducibles();
    ensure(ji.len() == 2, || format!("{} join-irreducible congruences", ji.len()))?;
    let (a, b) = (&con.members()[ji[0]], &con.members()[ji[1]]);
    ensure(a.refines(b) || b.refines(a), || {
        "join-irreducible congruences incomparable".into()
    })?;
    // The color classes generate exactly these two congruences.
    let least = |color: &str| {
        let (p, q) = c.edge_of_color(color).expect("both colors used");
        all.iter()
            .filter(|t| t.related(p, q))
            .max_by_key(|t| t.block_count())
            .cloned()
            .expect("full relates all")
    };
    let (u, v) = (least(GadgetS8::LOWER), least(GadgetS8::UPPER));
    ensure(u.refines(&v) && u != v, || "con(u) is not below con(v)".into())?;
    Ok(format!(
        "rank {:?} of 222, {} brute-force congruences",
        g.rank().unwrap_or(0),
        all.len()
    ))
}

fn end_to_end(mode: Mode) -> Verdict {
    let g = find_s8().map_err(|e| e.to_string())?;
    let posets: Vec<Poset> = enumerate_posets_up_to(4).map_err(|e| e.to_string())?;
    let four = posets.iter().filter(|p| p.len() == 4).count();
    ensure(four == 16, || format!("{four} posets with 4 elements, expected 16"))?;
    let mut largest = 0;
    for p in &posets {
        let d = downset_lattice(p);
        let report = assemble(&d, mode, &g).map_err(|e| format!("{:?}: {e}", p.labels()))?;
        let colored = &report.lattice;
        let l = colored.lattice();
        largest = largest.max(l.len());
        let what = || format!("P with covers {:?}", p.covers());
        ensure(is_semimodular(l), || format!("{}: not semimodular", what()))?;
        ensure(check_embedding_planarity(l).is_ok(), || {
            format!("{}: not planar", what())
        })?;
        let iso = check_con_isomorphic(l, Some(colored), &d).map_err(|e| format!("{}: {e:?}", what()))?;
        ensure(iso.con.len() == d.len(), || format!("{}: |Con L| != |D|", what()))?;
        let ji = ji_poset(&iso.con.to_lattice());
        ensure(poset_isomorphic(&ji, p).is_some(), || {
            format!("{}: Ji(Con L) differs from P", what())
        })?;
        if mode == Mode::Principal {
            check_witnesses(l, &d, &report.witnesses, &iso).map_err(|e| format!("{}: {e:?}", what()))?;
            // Every congruence is some con(0_x, 1_x), so all are principal.
            ensure(all_principal(l) == Principality::AllPrincipal, || {
                format!("{}: non-principal congruence", what())
            })?;
        }
    }
    Ok(format!(
        "{} posets with up to 4 elements ({four} with exactly 4), largest L has {largest} elements",
        posets.len()
    ))
}

fn example() -> Verdict {
    let text = fs::read_to_string(fixture("example.poset")).map_err(|e| e.to_string())?;
    let p = princon::format::parse_poset(&text).map_err(|e| e.to_string())?;
    let d = downset_lattice(&p);
    ensure(d.len() == 7, || format!("|D| = {}", d.len()))?;
    let g = find_s8().map_err(|e| e.to_string())?;
    let report = assemble(&d, Mode::Principal, &g).map_err(|e| e.to_string())?;
    ensure(report.sizes.gadgets == 3, || {
        format!("{} gadget copies", report.sizes.gadgets)
    })?;
    ensure(report.sizes.c_edges == 13, || {
        format!("C has {} edges", report.sizes.c_edges)
    })?;
    let subject = Subject {
        lattice: report.lattice.lattice(),
        colored: Some(&report.lattice),
        d: Some(&d),
        witnesses: Some(&report.witnesses),
    };
    let checks = [
        Check::Semimodular,
        Check::Planar,
        Check::ConIso,
        Check::Principal,
        Check::Witnesses,
        Check::Colors,
    ];
    let cert = certify(&subject, &checks).map_err(|e| e.to_string())?;
    if let Some(o) = cert.outcomes.iter().find(|o| !o.passed) {
        return Err(format!("{}: {}", o.check, o.detail));
    }
    Ok(format!(
        "3 gadget copies, 13 edges in C, |L| = {}, {} checks pass",
        report.lattice.len(),
        cert.outcomes.len()
    ))
}

fn negative_controls() -> Verdict {
    let c4 = lattice(&["0", "a", "b", "1"], &[("0", "a"), ("a", "b"), ("b", "1")]);
    match all_principal(&c4) {
        Principality::Counterexample(theta) => {
            let shown = theta.describe(&c4);
            ensure(shown == "{0,a},{b,1}", || format!("counterexample {shown}"))?;
        }
        Principality::AllPrincipal => return Err("C4 reported all principal".into()),
    }
    let n5 = lattice(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    );
    ensure(!is_semimodular(&n5), || "N5 reported semimodular".into())?;
    let b3 = downset_lattice(&Poset::new(vec!["x".into(), "y".into(), "z".into()], &[]).unwrap());
    ensure(b3.len() == 8, || "B3 has the wrong size".into())?;
    ensure(is_planar_dimension2(&b3) == Ok(false), || {
        "B3 reported dimension 2".into()
    })?;
    Ok("C4 counterexample {0,a},{b,1}; N5 not semimodular; B3 not planar".into())
}

fn determinism() -> Verdict {
    let input = fixture("example.poset");
    let run = |dir: &std::path::Path| -> Result<[Vec<u8>; 3], String> {
        let names = ["l.lat", "r.json", "l.dot"];
        let paths: Vec<PathBuf> = names.iter().map(|n| dir.join(n)).collect();
        let status = Command::new(env!("CARGO_BIN_EXE_princon"))
            .arg("construct")
            .arg("-i")
            .arg(&input)
            .arg("-o")
            .arg(&paths[0])
            .args(["--mode", "principal", "--report"])
            .arg(&paths[1])
            .arg("--dot")
            .arg(&paths[2])
            .output()
            .map_err(|e| e.to_string())?
            .status;
        ensure(status.success(), || format!("construct exited with {status}"))?;
        let read = |p: &PathBuf| fs::read(p).map_err(|e| e.to_string());
        Ok([read(&paths[0])?, read(&paths[1])?, read(&paths[2])?])
    };
    let (a, b) = (
        tempfile::tempdir().map_err(|e| e.to_string())?,
        tempfile::tempdir().map_err(|e| e.to_string())?,
    );
    let (first, second) = (run(a.path())?, run(b.path())?);
    for (k, name) in ["lattice file", "report", "DOT"].iter().enumerate() {
        ensure(first[k] == second[k], || format!("{name} differs between runs"))?;
    }
    Ok(format!(
        "lattice file {} B, report {} B, DOT {} B identical",
        first[0].len(),
        first[1].len(),
        first[2].len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("birkhoff round trip", Some(Duration::from_secs(5)), birkhoff),
        (
            "congruence oracle equivalence",
            Some(Duration::from_secs(60)),
            congruence_oracle,
        ),
        ("gadget existence", Some(Duration::from_secs(120)), gadget),
        ("principal mode end to end", Some(Duration::from_secs(600)), || {
            end_to_end(Mode::Principal)
        }),
        ("planar mode end to end", Some(Duration::from_secs(600)), || {
            end_to_end(Mode::Planar)
        }),
        ("worked example", None, example),
        ("negative controls", Some(Duration::from_secs(1)), negative_controls),
        ("determinism", None, determinism),
    ];
    let mut failed = 0;
    for (k, (name, bound, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let elapsed = start.elapsed();
        let verdict = match (verdict, bound) {
            (Ok(_), Some(b)) if elapsed > *b => Err(format!("took {elapsed:.2?}, bound {b:?}")),
            (v, _) => v,
        };
        let bound = bound.map(|b| format!(" / {b:?}")).unwrap_or_default();
        match verdict {
            Ok(msg) => println!("PASS  {} {name}: {msg} [{elapsed:.2?}{bound}]", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL  {} {name}: {msg} [{elapsed:.2?}{bound}]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
