use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use princon::report::ReportJson;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn princon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_princon")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const N5: &str = "elements:\n0\na\nb\nc\n1\ncovers:\n0 < a\na < b\nb < 1\n0 < c\nc < 1\n";
const C4: &str = "elements:\n0\na\nb\n1\ncovers:\n0 < a\na < b\nb < 1\n";
const M3: &str = "elements:\n0\np\nq\nr\n1\ncovers:\n0 < p\n0 < q\n0 < r\np < 1\nq < 1\nr < 1\n";
const B2: &str = "elements:\n0\np\nq\n1\ncovers:\n0 < p\n0 < q\np < 1\nq < 1\n";
const C2: &str = "elements:\n0\n1\ncovers:\n0 < 1\n";

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let (lat, report) = (dir.path().join("l.lat"), dir.path().join("r.json"));
    let out = princon(&[
        "construct",
        "-i",
        path(&fixture("example.poset")),
        "-o",
        path(&lat),
        "--mode",
        "principal",
        "--report",
        path(&report),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed = ReportJson::from_json(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(parsed.sizes.gadgets, 3);
    assert_eq!(parsed.sizes.c_edges, 13);
    assert!(parsed.certificate.passed());
    assert_eq!(parsed.witnesses.len(), 7);

    let out = princon(&[
        "verify",
        "-i",
        path(&lat),
        "-d",
        path(&fixture("example.poset")),
        "--d-kind",
        "poset",
        "--witnesses",
        path(&report),
        "--checks",
        "semimodular,planar,con-iso,principal,witnesses,colors",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(String::from_utf8_lossy(&out.stdout).matches(" pass").count(), 6);
}

#[test]
fn construct_from_a_lattice_file_in_planar_mode() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(dir.path(), "b2.lat", B2);
    let lat = dir.path().join("l.lat");
    let gadget = fixture("s8.lat");
    let out = princon(&[
        "construct",
        "-i",
        path(&d),
        "--kind",
        "lattice",
        "-o",
        path(&lat),
        "--mode",
        "planar",
        "--gadget",
        path(&gadget),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let out = princon(&[
        "verify",
        "-i",
        path(&lat),
        "-d",
        path(&d),
        "--checks",
        "con-iso,semimodular,planar",
    ]);
    assert!(out.status.success());
}

#[test]
fn non_distributive_input_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = write(dir.path(), "n5.lat", N5);
    let out = princon(&[
        "construct",
        "-i",
        path(&d),
        "--kind",
        "lattice",
        "-o",
        path(&dir.path().join("x")),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let n5 = write(dir.path(), "n5.lat", N5);
    let out = princon(&["verify", "-i", path(&n5), "--checks", "semimodular"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
    // No drawing: the check cannot run, so no certificate.
    let out = princon(&["verify", "-i", path(&n5), "--checks", "planar"]);
    assert_eq!(out.status.code(), Some(2));
    let out = princon(&["verify", "-i", path(&n5), "--checks", "con-iso"]);
    assert_eq!(out.status.code(), Some(2));
    let out = princon(&["verify", "-i", path(&n5), "--checks", "bogus"]);
    assert!(!out.status.success());
}

#[test]
fn con_isomorphism_examples() {
    let dir = tempfile::tempdir().unwrap();
    let check = |l: &str, d: &str| {
        let l = write(dir.path(), "l.lat", l);
        let d = write(dir.path(), "d.lat", d);
        princon(&["verify", "-i", path(&l), "-d", path(&d), "--checks", "con-iso"])
            .status
            .code()
    };
    assert_eq!(check(M3, C2), Some(0));
    assert_eq!(check(B2, B2), Some(0));
    assert_eq!(check(C4, B2), Some(1));
}

#[test]
fn verify_writes_a_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let m3 = write(dir.path(), "m3.lat", M3);
    let cert = dir.path().join("cert.json");
    let out = princon(&[
        "verify",
        "-i",
        path(&m3),
        "--checks",
        "semimodular,planar-dim2,principal",
        "--report",
        path(&cert),
    ]);
    assert!(out.status.success());
    let cert: princon::Certificate = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(cert.outcomes.len(), 3);
    assert!(cert.outcomes.iter().all(|o| o.millis.is_some()));
    assert_eq!(cert.digests["lattice"], princon::certificate::sha256_hex(M3.as_bytes()));
}

#[test]
fn conlat_of_a_chain() {
    let dir = tempfile::tempdir().unwrap();
    let c4 = write(dir.path(), "c4.lat", C4);
    let out_path = dir.path().join("con.lat");
    assert!(princon(&["conlat", "-i", path(&c4), "-o", path(&out_path)])
        .status
        .success());
    let con = princon::format::parse_lattice(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(con.len(), 8);
    assert!(con.is_distributive());
}

#[test]
fn gadget_search_reproduces_the_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("s8.lat");
    assert!(princon(&["gadget", "--search", "-o", path(&out_path)]).status.success());
    assert_eq!(fs::read(&out_path).unwrap(), fs::read(fixture("s8.lat")).unwrap());
    assert!(princon(&["gadget", "-i", path(&fixture("s8.lat"))]).status.success());
    let bad = write(
        dir.path(),
        "bad.lat",
        "elements:\n0\n1\ncovers:\n0 < 1\ncolors:\n0 < 1 : u\n",
    );
    assert_eq!(princon(&["gadget", "-i", path(&bad)]).status.code(), Some(2));
}

#[test]
fn corpus_runs() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("c.json");
    let out = princon(&["corpus", "--max", "3", "--mode", "principal", "--json", path(&json)]);
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("9 of 9 cases passed"), "{stdout}");
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let cases = summary["cases"].as_array().unwrap();
    assert_eq!(cases.iter().filter(|c| c["poset_size"] == 3).count(), 5);
    let ids: Vec<u64> = cases.iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, (0..9).collect::<Vec<_>>());

    let out = princon(&["corpus", "--max", "1", "--mode", "planar"]);
    assert!(out.status.success());
    assert_eq!(princon(&["corpus", "--max", "6"]).status.code(), Some(2));
}
