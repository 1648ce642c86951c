use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nlc2_cli::format::{parse_graph, render_graph};
use nlc2_core::oracles::{brute_nlc2, OracleBudget};
use nlc2_core::Graph;
use tempfile::TempDir;

fn nlc2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlc2")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn write_graph(dir: &TempDir, name: &str, g: &Graph) -> PathBuf {
    write(dir, name, &render_graph(g))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const P4: &str = "# path a-b-c-d\n4 3\n0 1\n1 2\n2 3\n";
const K3: &str = "3 3\n0 1\n0 2\n1 2\n";
const P3: &str = "3 2\n0 1\n1 2\n";

#[test]
fn recognize_verdicts_and_codes() {
    let dir = TempDir::new().unwrap();
    for text in [P4, K3] {
        let p = write(&dir, "g.txt", text);
        let o = nlc2(&["recognize", s(&p), "--expr", "--verify", "--oracle"]);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        assert!(out.starts_with("YES\n") && out.contains("verified"), "{out}");
    }
    let bad = write(&dir, "bad.txt", "four three\n");
    let o = nlc2(&["recognize", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

/// A graph with no NLC-2 expression, found by the oracle.
fn non_member(seed: u64) -> Graph {
    use rand::{Rng, SeedableRng};
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let edges: Vec<(usize, usize)> =
            (0..8).flat_map(|u| (u + 1..8).map(move |v| (u, v))).filter(|_| r.gen_bool(0.5)).collect();
        let g = Graph::build(8, &edges).unwrap();
        if !brute_nlc2(&g, OracleBudget::NLC2).unwrap() {
            return g;
        }
    }
}

#[test]
fn recognize_rejects_non_member() {
    let dir = TempDir::new().unwrap();
    let p = write_graph(&dir, "g.txt", &non_member(1));
    let o = nlc2(&["recognize", s(&p), "--oracle"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("NO\n"));
}

#[test]
fn iso_codes() {
    let dir = TempDir::new().unwrap();
    let gen = nlc2(&["gen", "--n", "25", "--k", "2", "--seed", "4"]);
    let g = parse_graph(&stdout(&gen)).unwrap();
    let perm: Vec<usize> = (0..25).map(|v| (v * 7 + 3) % 25).collect();
    let a = write_graph(&dir, "a.txt", &g);
    let b = write_graph(&dir, "b.txt", &g.permuted(&perm));
    let o = nlc2(&["iso", s(&a), s(&b)]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "ISOMORPHIC\n"));

    let k3 = write(&dir, "k3.txt", K3);
    let p3 = write(&dir, "p3.txt", P3);
    let o = nlc2(&["iso", s(&k3), s(&p3), "--oracle"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "NOT-ISOMORPHIC\n"));

    let x = non_member(2);
    let xp = write_graph(&dir, "x.txt", &x);
    let yp = write_graph(&dir, "y.txt", &x.permuted(&[7, 6, 5, 4, 3, 2, 1, 0]));
    let o = nlc2(&["iso", s(&xp), s(&yp)]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(3), "NOT-NLC2\n"));

    let o = nlc2(&["iso", s(&k3), "/no/such/file"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_views() {
    let dir = TempDir::new().unwrap();
    let p4 = write(&dir, "p4.txt", P4);
    let o = nlc2(&["decompose", s(&p4), "--kind", "modular"]);
    assert_eq!(stdout(&o), "prime [0, 1, 2, 3]\n  leaf 0\n  leaf 1\n  leaf 2\n  leaf 3\n");

    let star = write(&dir, "star.txt", "4 3\n0 1\n0 2\n0 3\n");
    let o = nlc2(&["decompose", s(&star), "--kind", "split"]);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("node")).count(), 1);
    assert!(out.contains("degenerate"));

    let tree = "degenerate 1000\n  linear 0010\n    leaf 0 label 2\n    leaf 1 label 1\n  linear 0010\n    leaf 3 label 2\n    leaf 2 label 1\nencoding D1000(N0010(L2L1)N0010(L2L1))\n";
    let o = nlc2(&["decompose", s(&p4), "--kind", "nlc2", "--labels", "2,1,1,2"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), tree));

    let o = nlc2(&["decompose", s(&p4), "--kind", "nlc2", "--dot"]);
    let out = stdout(&o);
    assert!(out.starts_with("graph nlc2 {") && out.contains("shape=box") && out.contains("shape=ellipse"));

    for kind in ["modular", "split", "cosplit", "bijoin"] {
        let o = nlc2(&["decompose", s(&p4), "--kind", kind, "--dot"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).ends_with("}\n"));
    }
}

#[test]
fn decompose_rejects_bad_labellings() {
    let dir = TempDir::new().unwrap();
    let p4 = write(&dir, "p4.txt", P4);
    // the whole vertex set is a mono-coloured module
    let o = nlc2(&["decompose", s(&p4), "--kind", "nlc2", "--labels", "1,1,1,1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = nlc2(&["decompose", s(&p4), "--kind", "nlc2", "--labels", "1,2"]);
    assert_eq!(o.status.code(), Some(2));
    let k3 = write(&dir, "k3.txt", K3);
    let o = nlc2(&["decompose", s(&k3), "--kind", "nlc2"]);
    assert_eq!(o.status.code(), Some(2));
}

fn has_induced_p4(g: &Graph) -> bool {
    let n = g.n();
    let e = |a, b| g.has_edge(a, b);
    (0..n).any(|b| {
        (0..n).any(|c| {
            e(b, c)
                && (0..n).any(|a| {
                    a != c && e(a, b) && !e(a, c) && (0..n).any(|d| d != b && e(c, d) && !e(b, d) && !e(a, d) && a != d)
                })
        })
    })
}

#[test]
fn gen_outputs() {
    let o = nlc2(&["gen", "--n", "1", "--k", "2", "--seed", "9"]);
    let g = parse_graph(&stdout(&o)).unwrap();
    assert_eq!((g.n(), g.m()), (1, 0));

    for seed in 0..10 {
        let o = nlc2(&["gen", "--n", "14", "--k", "1", "--seed", &seed.to_string()]);
        assert!(!has_induced_p4(&parse_graph(&stdout(&o)).unwrap()));
    }

    let a = nlc2(&["gen", "--n", "30", "--seed", "5"]);
    let b = nlc2(&["gen", "--n", "30", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);

    let dir = TempDir::new().unwrap();
    let gp = dir.path().join("g.txt");
    let ep = dir.path().join("e.txt");
    let o = nlc2(&["gen", "--n", "12", "--seed", "2", "--graph-out", s(&gp), "--expr-out", s(&ep)]);
    assert_eq!(o.status.code(), Some(0));
    let g = parse_graph(&std::fs::read_to_string(&gp).unwrap()).unwrap();
    let e: nlc2_core::expression::Nlc2Expression = std::fs::read_to_string(&ep).unwrap().trim().parse().unwrap();
    assert_eq!(e.evaluate().unwrap().graph, g);

    let o = nlc2(&["gen", "--n", "5", "--k", "3"]);
    assert_eq!(o.status.code(), Some(2));
}
