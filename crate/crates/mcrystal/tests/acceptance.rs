//! End-to-end acceptance run. Prints one PASS/FAIL line per check and exits
//! nonzero if anything failed. Checks 1a-1h pin the golden examples, 2a-2d
//! and 3-4 run the exhaustive sweeps, 5 exercises the installed binary.

use std::collections::BTreeSet;
use std::process::Command;

use mcrystal::cartan::{AffineType, CartanDatum, WeightVector};
use mcrystal::delta::{a_table, an_algorithm, bn_recursion, d_b3, wt_affine, wt_lambda, ATable};
use mcrystal::monomial::{apply_word, embed_lambda, h_lambda, CrystalVariant, Monomial};
use mcrystal::oracle::{
    b4_coefficients, bfs_expand, verify_axioms, verify_delta, verify_wall_iso, Report,
};
use mcrystal::youngwall::Wall;

fn datum(s: &str) -> CartanDatum {
    CartanDatum::new(s.parse::<AffineType>().expect("known type"))
}

fn word(d: &CartanDatum, w: &[usize]) -> Monomial {
    apply_word(d, CrystalVariant::ModifiedInfinity, &Monomial::one(), w).expect("total")
}

struct Score {
    failed: usize,
    total: usize,
}

impl Score {
    fn check(&mut self, id: &str, what: &str, outcome: Result<(), String>) {
        self.total += 1;
        match outcome {
            Ok(()) => println!("PASS {}: {}", id, what),
            Err(why) => {
                self.failed += 1;
                println!("FAIL {}: {} ({})", id, what, why);
            }
        }
    }

    fn report(&mut self, id: &str, what: &str, r: &Report) {
        let outcome = if r.ok() {
            Ok(())
        } else {
            Err(format!(
                "{} mismatches, first: {}",
                r.mismatches.len(),
                r.mismatches.first().map(String::as_str).unwrap_or("")
            ))
        };
        self.check(id, what, outcome);
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {:?}, want {:?}", got, want))
    }
}

fn main() {
    let mut s = Score { failed: 0, total: 0 };

    golden_examples(&mut s);
    sweeps(&mut s);
    cli_contract(&mut s);

    println!("{} checks, {} failed", s.total, s.failed);
    if s.failed > 0 {
        std::process::exit(1);
    }
}

fn golden_examples(s: &mut Score) {
    let a1 = datum("A1");

    let m = word(&a1, &[0, 1, 0, 0, 0]);
    s.check(
        "1a",
        "A1 five-step monomial and its D",
        eq(m.to_string(), "Y(0,0)^-3 Y(0,1)^-2 Y(0,2)^-1 Y(1,1)^5 Y(1,2)".to_string()).and_then(
            |()| eq(wt_affine(&a1, &m).map(|w| w.dcoef), Ok(-4)),
        ),
    );

    let m = word(&a1, &[0, 1, 1, 0]);
    let t = a_table(&a1, &m);
    s.check(
        "1b",
        "A1 four-step table entries and D",
        t.map_err(|e| e.to_string()).and_then(|t| {
            eq(
                (t.get(0, 0), t.get(0, 1), t.get(0, 2), t.row_sum(0)),
                (-1, -1, 0, -2),
            )
        }),
    );

    let m: Monomial = "Y(0,0)^-1 Y(0,1) Y(1,1) Y(1,2)^-1".parse().expect("parses");
    s.check(
        "1c",
        "A1 weight of the null-weight monomial is -delta",
        eq(
            wt_affine(&a1, &m).map(|w| (w.to_string(), w.lambda, w.dcoef)),
            Ok(("-δ".to_string(), vec![0, 0], -1)),
        ),
    );

    let a4 = datum("A4");
    let m = word(&a4, &[0, 4, 0, 3, 1, 0]);
    let want = ATable::from_entries([((0, 0), -3), ((1, 0), -1), ((4, 1), -1), ((3, 2), -1)]);
    s.check(
        "1d",
        "A4 six-step table is exactly four entries, D = -3",
        an_algorithm(&a4, &m)
            .map_err(|e| e.to_string())
            .and_then(|t| eq(t.row_sum(0), -3).and_then(|()| eq(t, want))),
    );

    let a2 = datum("A2");
    let m = word(&a2, &[0, 1]);
    s.check(
        "1e",
        "psi of wall (1,1) hits the two-step monomial, D = -1; reduce((2,2,2,1,1)) = (1,1)",
        eq(Wall::new(2, vec![1, 1]).psi(&a2), m.clone())
            .and_then(|()| eq(wt_affine(&a2, &m).map(|w| w.dcoef), Ok(-1)))
            .and_then(|()| eq(Wall::new(2, vec![2, 2, 2, 1, 1]).reduce(), Wall::new(2, vec![1, 1]))),
    );

    let b3 = datum("B3");
    let m = word(&b3, &[3, 2, 1, 0]);
    s.check(
        "1f",
        "B3 four-step D = -1 by recursion and closed form, weight -L0 - L1 + L2 - delta",
        bn_recursion(&b3, &m)
            .map_err(|e| e.to_string())
            .and_then(|t| eq(t.row_sum(0), -1))
            .and_then(|()| eq(d_b3(&m), -1))
            .and_then(|()| {
                eq(
                    wt_affine(&b3, &m).map(|w| w.to_string()),
                    Ok("-Λ0 - Λ1 + Λ2 - δ".to_string()),
                )
            }),
    );

    let p = [0i64, 2, 0];
    let m = apply_word(&a2, CrystalVariant::HighestWeight, &h_lambda(&p), &[1, 0, 2])
        .expect("stays inside the crystal");
    let want = ATable::from_entries([((0, 1), -1), ((1, 0), -1), ((2, 2), -1)]);
    s.check(
        "1g",
        "highest-weight three-step weight is 2L1 - delta; embedded table has three entries",
        eq(
            wt_lambda(&a2, &m, &p).map(|w| w.to_string()),
            Ok("2Λ1 - δ".to_string()),
        )
        .and_then(|()| {
            a_table(&a2, &embed_lambda(&m, &p))
                .map_err(|e| e.to_string())
                .and_then(|t| eq(t, want))
        }),
    );

    let (seq_a, seq_b) = b4_coefficients(21);
    s.check(
        "1h",
        "B4 coefficient sequences, 21 terms each",
        eq(
            seq_a,
            vec![1, 0, 1, 1, 2, 1, 3, 2, 3, 3, 4, 3, 5, 4, 5, 5, 6, 5, 7, 6, 7],
        )
        .and_then(|()| {
            eq(
                seq_b,
                vec![0, 1, 0, 2, 1, 2, 2, 3, 2, 4, 3, 4, 4, 5, 4, 6, 5, 6, 6, 7, 6],
            )
        }),
    );
}

const SWEEP_DEPTHS: [(&str, usize); 6] = [
    ("A1", 10),
    ("A2", 7),
    ("A3", 7),
    ("A4", 6),
    ("B3", 6),
    ("B4", 5),
];

fn sweeps(s: &mut Score) {
    for (id, ty, depth) in [("2a", "A1", 10)] {
        s.report(id, &format!("{} delta sweep to depth {}", ty, depth), &verify_delta(&datum(ty), depth));
    }
    for (id, ty, depth) in [("2b.A2", "A2", 7), ("2b.A3", "A3", 7), ("2b.A4", "A4", 6)] {
        s.report(id, &format!("{} delta sweep to depth {}", ty, depth), &verify_delta(&datum(ty), depth));
    }
    for (id, ty, depth) in [("2c.B3", "B3", 6), ("2c.B4", "B4", 5)] {
        s.report(id, &format!("{} delta sweep to depth {}", ty, depth), &verify_delta(&datum(ty), depth));
    }
    for (n, depth) in [(1usize, 6usize), (2, 6), (3, 5)] {
        s.report(
            &format!("2d.n{}", n),
            &format!("wall correspondence at rank {} to depth {}", n, depth),
            &verify_wall_iso(n, depth),
        );
    }
    for (ty, depth) in SWEEP_DEPTHS {
        let d = datum(ty);
        let zero = WeightVector::zero(d.index_count());
        s.report(
            &format!("3.{}", ty),
            &format!("crystal axioms on the {} ball to depth {}", ty, depth),
            &verify_axioms(&d, CrystalVariant::ModifiedInfinity, Monomial::one(), zero, depth),
        );
    }
    for (ty, depth) in SWEEP_DEPTHS {
        let d = datum(ty);
        let zero = WeightVector::zero(d.index_count());
        let run = |rev: bool| {
            bfs_expand(
                &d,
                CrystalVariant::ModifiedInfinity,
                Monomial::one(),
                zero.clone(),
                depth,
                rev,
            )
        };
        let outcome = match (run(false), run(true)) {
            (Ok(fwd), Ok(rev)) => {
                let key = |g: &mcrystal::oracle::CrystalGraph| {
                    g.nodes
                        .iter()
                        .map(|n| (n.monomial.to_string(), n.zero_count, n.weight.to_string()))
                        .collect::<BTreeSet<_>>()
                };
                eq(key(&fwd), key(&rev))
            }
            (a, b) => Err(format!(
                "merge assertion fired: {:?} / {:?}",
                a.err().map(|e| e.to_string()),
                b.err().map(|e| e.to_string())
            )),
        };
        s.check(
            &format!("4.{}", ty),
            &format!("{} ball to depth {} is path independent in both visit orders", ty, depth),
            outcome,
        );
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mcrystal"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn expect_cli(args: &[&str], code: i32, needle: &str) -> Result<(), String> {
    let (got, stdout) = cli(args);
    if got != code {
        return Err(format!("exit {} (want {}) for {:?}", got, code, args));
    }
    if !stdout.contains(needle) {
        return Err(format!("stdout of {:?} lacks {:?}", args, needle));
    }
    Ok(())
}

struct DotGraph {
    nodes: Vec<String>,
    edges: Vec<(usize, usize, usize)>,
}

/// Strict line-based reader for the emitted DOT dialect: one statement per
/// line, node names `n<id>`, every statement labeled and semicolon-closed.
fn parse_dot(text: &str) -> Result<DotGraph, String> {
    let mut lines = text.lines();
    if lines.next() != Some("digraph crystal {") {
        return Err("missing digraph header".to_string());
    }
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut closed = false;
    for line in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if closed {
            return Err(format!("statement after closing brace: {:?}", line));
        }
        if line == "}" {
            closed = true;
            continue;
        }
        if line == "rankdir=TB;" || line.starts_with("node [") {
            continue;
        }
        let stmt = line
            .strip_suffix(';')
            .ok_or_else(|| format!("unterminated statement: {:?}", line))?;
        let node_id = |name: &str| -> Result<usize, String> {
            name.strip_prefix('n')
                .and_then(|digits| digits.parse().ok())
                .ok_or_else(|| format!("bad node name {:?}", name))
        };
        if let Some((from, rest)) = stmt.split_once(" -> ") {
            let (to, label) = rest
                .split_once(" [label=\"")
                .ok_or_else(|| format!("unlabeled edge: {:?}", line))?;
            let label = label
                .strip_suffix("\"]")
                .ok_or_else(|| format!("unterminated label: {:?}", line))?;
            edges.push((
                node_id(from)?,
                node_id(to)?,
                label.parse().map_err(|_| format!("non-integer edge label {:?}", label))?,
            ));
        } else {
            let (name, label) = stmt
                .split_once(" [label=\"")
                .ok_or_else(|| format!("unlabeled node: {:?}", line))?;
            let label = label
                .strip_suffix("\"]")
                .ok_or_else(|| format!("unterminated label: {:?}", line))?;
            if !label.contains("\\nwt = ") || !label.contains("\\nD = ") {
                return Err(format!("node label lacks weight annotations: {:?}", label));
            }
            nodes.push(name.to_string());
        }
    }
    if !closed {
        return Err("missing closing brace".to_string());
    }
    for &(f, t, _) in &edges {
        if f >= nodes.len() || t >= nodes.len() {
            return Err(format!("edge endpoint n{} or n{} undeclared", f, t));
        }
    }
    Ok(DotGraph { nodes, edges })
}

fn dot_round_trip() -> Result<(), String> {
    let (code, dot) = cli(&["expand", "--type", "A1", "--depth", "1"]);
    if code != 0 {
        return Err(format!("expand exit {}", code));
    }
    let g = parse_dot(&dot)?;
    eq((g.nodes.len(), g.edges.len()), (3, 2))?;

    let (code, dot) = cli(&["expand", "--type", "A2", "--depth", "2"]);
    if code != 0 {
        return Err(format!("expand exit {}", code));
    }
    let g = parse_dot(&dot)?;
    let (code, json) = cli(&["expand", "--type", "A2", "--depth", "2", "--format", "json"]);
    if code != 0 {
        return Err(format!("expand exit {}", code));
    }
    let v: serde_json::Value = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    let json_nodes = v["nodes"].as_array().ok_or("nodes not an array")?;
    let json_edges: BTreeSet<(usize, usize, usize)> = v["edges"]
        .as_array()
        .ok_or("edges not an array")?
        .iter()
        .map(|e| {
            (
                e["from"].as_u64().unwrap() as usize,
                e["to"].as_u64().unwrap() as usize,
                e["label"].as_u64().unwrap() as usize,
            )
        })
        .collect();
    eq(g.nodes.len(), json_nodes.len())?;
    eq(g.edges.iter().copied().collect::<BTreeSet<_>>(), json_edges)?;
    let two_step = json_nodes
        .iter()
        .any(|n| n["monomial"] == "Y(0,0)^-1 Y(1,1)^-1 Y(2,0) Y(2,1)");
    if !two_step {
        return Err("depth-2 A2 ball lacks the two-step example monomial".to_string());
    }
    Ok(())
}

fn cli_contract(s: &mut Score) {
    s.check(
        "5.verify-all",
        "verify --suite all exits 0",
        expect_cli(&["verify", "--suite", "all"], 0, "b4seq"),
    );
    s.check(
        "5.weight-a1",
        "documented A1 weight one-liner",
        expect_cli(&["weight", "--type", "A1", "--word", "0,1,0,0,0"], 0, "D = -4"),
    );
    s.check(
        "5.weight-b3",
        "documented B3 weight one-liner",
        expect_cli(
            &["weight", "--type", "B3", "--word", "3,2,1,0"],
            0,
            "weight: -Λ0 - Λ1 + Λ2 - δ",
        ),
    );
    s.check(
        "5.weight-lambda",
        "documented highest-weight one-liner",
        expect_cli(
            &["weight", "--type", "A2", "--lambda", "0,2,0", "--word", "1,0,2"],
            0,
            "weight: 2Λ1 - δ",
        ),
    );
    s.check(
        "5.convert-table",
        "documented A4 table one-liner",
        expect_cli(
            &["convert", "--type", "A4", "--word", "0,4,0,3,1,0", "--json"],
            0,
            r#"[{"i":0,"k":0,"a":-3},{"i":1,"k":0,"a":-1},{"i":4,"k":1,"a":-1},{"i":3,"k":2,"a":-1}]"#,
        ),
    );
    s.check(
        "5.convert-wall",
        "documented wall conversion one-liner",
        expect_cli(&["convert", "--type", "A2", "--word", "0,1", "--to", "wall"], 0, "1,1"),
    );
    s.check("5.dot", "DOT output round-trips through a parser", dot_round_trip());

    let status_only = |args: &[&str], code: i32| -> Result<(), String> {
        let (got, _) = cli(args);
        eq(got, code).map_err(|e| format!("{:?}: {}", args, e))
    };
    s.check(
        "5.exit-codes",
        "exit codes distinguish mismatch, parse, membership, and type errors",
        status_only(&["verify", "--suite", "walls", "--type", "A1"], 1)
            .and_then(|()| status_only(&["weight", "--type", "A1", "--monomial", "junk"], 2))
            .and_then(|()| status_only(&["expand", "--type", "A1", "--depth", "99"], 2))
            .and_then(|()| status_only(&["convert", "--type", "A1", "--monomial", "Y(0,0)"], 3))
            .and_then(|()| status_only(&["weight", "--type", "C3", "--word", "0"], 4)),
    );
}
