use std::fmt::Write as _;
use std::sync::Arc;

use anyhow::{Context, Result};
use serde_json::json;

use schurkit::characters::{char_costandard, lemma32_check, lr_expand_skew, sw_character_identity, LaurentCharacter};
use schurkit::closedforms::{
    rjstar_expected, rs_expected, sw_ext_symmetry_expected, yoneda_B, yoneda_convention_report, ExtPair, HookKind,
};
use schurkit::combinatorics::{blocks, hat, Partition};
use schurkit::exactla::is_prime;
use schurkit::homalg::{ext_dims_with_budget, rs_dims, ExtTable, Recollement};
use schurkit::polymod::simple_general;
use schurkit::schuralg::{build_schur_algebra, build_schur_algebra_cached, Algebra};
use schurkit::verify::{run_criterion, Suite, CRITERIA};

use crate::label::Label;
use crate::report::{join, Report};
use crate::{Command, Config, SwCommand};

/// Missing or inconsistent command-line input.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

impl Config {
    fn p(&self) -> Result<usize> {
        let p = self.p.ok_or_else(|| usage("this command needs -p"))?;
        if p > u32::MAX as usize || !is_prime(p as u32) {
            return Err(usage(format!("p = {p} is not prime")));
        }
        Ok(p)
    }

    fn n(&self) -> Result<usize> {
        match self.n {
            Some(0) => Err(usage("n must be positive")),
            Some(n) => Ok(n),
            None => Err(usage("this command needs -n")),
        }
    }

    fn k(&self) -> Result<usize> {
        self.k.ok_or_else(|| usage("this command needs -k"))
    }

    fn qmax(&self, n: usize) -> usize {
        self.qmax.unwrap_or(2 * n)
    }

    fn algebra(&self, n: usize, d: usize, p: usize) -> Result<Arc<Algebra>> {
        let a = match &self.cache_dir {
            Some(dir) => build_schur_algebra_cached(n, d, p as u32, dir)?,
            None => build_schur_algebra(n, d, p as u32)?,
        };
        Ok(a)
    }

    /// `d` from the flag, checked against the weight of the labels.
    fn degree(&self, labels: &[&Partition]) -> Result<usize> {
        let w = labels[0].weight();
        if labels.iter().any(|l| l.weight() != w) {
            return Err(usage("labels have different weights"));
        }
        match self.d {
            Some(d) if d != w => Err(usage(format!("-d {d} does not match label weight {w}"))),
            _ => Ok(w),
        }
    }
}

pub fn run(cfg: &Config, cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Blocks => cmd_blocks(cfg),
        Command::Ext { args, compare } => cmd_ext(cfg, args, *compare),
        Command::Sw { cmd } => cmd_sw(cfg, cmd),
        Command::Yoneda { table, products } => cmd_yoneda(cfg, *table, products),
        Command::Rs { label } => cmd_rs(cfg, label),
        Command::Rjstar { label, m } => cmd_rjstar(cfg, label, *m),
        Command::Character { lambda, simple } => cmd_character(cfg, lambda, *simple),
        Command::Module { label, dump_full } => cmd_module(cfg, label, *dump_full),
        Command::Verify { suite, criterion } => cmd_verify(suite, criterion),
    }
}

fn partition(s: &str) -> Result<Partition> {
    s.parse::<Partition>().map_err(|e| usage(e.to_string()))
}

fn cmd_blocks(cfg: &Config) -> Result<Report> {
    let (p, n) = (cfg.p()?, cfg.n()?);
    let d = cfg.d.unwrap_or(p);
    let bs = blocks(d, n, p)?;
    let mut pretty = String::new();
    let mut csv = vec!["block,core,alpha,member".to_string()];
    for (b, blk) in bs.iter().enumerate() {
        let members: Vec<String> = blk.members.iter().map(|l| format!("({l})")).collect();
        writeln!(pretty, "block {}: core ({}), alpha {}: {}", b + 1, blk.core, blk.alpha, members.join(" "))?;
        for l in &blk.members {
            csv.push(format!("{},\"{}\",{},\"{}\"", b + 1, blk.core, blk.alpha, l));
        }
    }
    Ok(Report::new(pretty, json!({ "p": p, "n": n, "d": d, "blocks": bs }), csv))
}

fn ext_closed(cfg: &Config, a: &Label, b: &Label) -> Result<ExtTable> {
    let n = cfg.n()?;
    let (Some(i), Some(j)) = (a.hook_index(cfg.p), b.hook_index(cfg.p)) else {
        return Err(usage("closed forms are only known between hooks"));
    };
    let pair =
        ExtPair::from_kinds(a.kind, b.kind).ok_or_else(|| usage(format!("no closed form for the pair ({a}, {b})")))?;
    let t = pair.table(n, i, j, cfg.qmax(n))?;
    Ok(ExtTable::new(a.to_string(), b.to_string(), &t.as_vec()))
}

fn ext_brute(cfg: &Config, a: &Label, b: &Label) -> Result<ExtTable> {
    let (p, n) = (cfg.p()?, cfg.n()?);
    let (la, lb) = (a.partition(p), b.partition(p));
    let d = cfg.degree(&[&la, &lb])?;
    let alg = cfg.algebra(n, d, p)?;
    let (ma, mb) = (a.module(&alg, p)?, b.module(&alg, p)?);
    eprintln!("resolving {a} over S({n},{d}) at p = {p}");
    let t = ext_dims_with_budget(&ma, &mb, cfg.qmax(n), cfg.budget)?;
    Ok(ExtTable::new(a.to_string(), b.to_string(), &t.as_vec()))
}

fn table_text(t: &ExtTable, backend: &str) -> String {
    let mut s = format!("Ext^*({}, {}) [{backend}]\ndims: {}\n", t.pair[0], t.pair[1], join(&t.as_vec()));
    for q in t.nonzero_degrees() {
        let _ = writeln!(s, "q={q}:{}", t.get(q));
    }
    s
}

fn table_csv(tables: &[(&str, &ExtTable)]) -> Vec<String> {
    let mut rows = vec!["backend,a,b,q,dim".to_string()];
    for (backend, t) in tables {
        rows.extend(t.csv_rows().into_iter().map(|r| format!("{backend},{r}")));
    }
    rows
}

fn cmd_ext(cfg: &Config, args: &[String], compare: bool) -> Result<Report> {
    let (backend, labels) = match args.len() {
        3 => (Some(args[0].as_str()), &args[1..]),
        _ => (None, args),
    };
    let a: Label = labels[0].parse().map_err(|e: anyhow::Error| usage(e.to_string()))?;
    let b: Label = labels[1].parse().map_err(|e: anyhow::Error| usage(e.to_string()))?;
    match (backend, compare) {
        (None, true) => {
            let c = ext_closed(cfg, &a, &b)?;
            let r = ext_brute(cfg, &a, &b)?;
            let same = c.same_dims(&r);
            let verdict = if same { "MATCH" } else { "MISMATCH" };
            let pretty = format!("{}{}{verdict}\n", table_text(&c, "closed"), table_text(&r, "brute"));
            let js = json!({ "closed": c, "brute": r, "match": same });
            Ok(Report::new(pretty, js, table_csv(&[("closed", &c), ("brute", &r)])).with_ok(same))
        }
        (Some(be @ ("closed" | "brute")), false) => {
            let t = if be == "closed" { ext_closed(cfg, &a, &b)? } else { ext_brute(cfg, &a, &b)? };
            Ok(Report::new(table_text(&t, be), json!({ "backend": be, "table": t }), table_csv(&[(be, &t)])))
        }
        (Some(be), false) => Err(usage(format!("unknown backend {be:?}; use closed or brute"))),
        (Some(_), true) => Err(usage("--compare runs both backends; drop the backend name")),
        (None, false) => Err(usage("name a backend (closed or brute) or pass --compare")),
    }
}

fn cmd_sw(cfg: &Config, cmd: &SwCommand) -> Result<Report> {
    let (n, k) = (cfg.n()?, cfg.k()?);
    match cmd {
        SwCommand::Hat { lambda } => {
            let l = partition(lambda)?;
            let h = hat(&l, n, k)?;
            Ok(Report::new(format!("{h}\n"), json!({ "lambda": l, "hat": h }), vec![format!("\"{l}\",\"{h}\"")]))
        }
        SwCommand::Lr { lambda } => {
            let l = partition(lambda)?;
            let big = Partition::rectangle(n, k);
            let exp = lr_expand_skew(&big, &l)?;
            let ok = lemma32_check(&l, n, k)?;
            let mut pretty = format!("({big})/({l}):\n");
            let mut csv = vec!["mu,coefficient".to_string()];
            for (m, c) in &exp {
                writeln!(pretty, "  ({m}): {c}")?;
                csv.push(format!("\"{m}\",{c}"));
            }
            writeln!(pretty, "unique content with at most {n} columns equal to the hat: {ok}")?;
            let terms: Vec<_> = exp.iter().map(|(m, c)| json!([m, c])).collect();
            Ok(Report::new(pretty, json!({ "terms": terms, "lemma_holds": ok }), csv).with_ok(ok))
        }
        SwCommand::Char { lambda } => {
            let l = partition(lambda)?;
            let ok = sw_character_identity(&l, n, k)?;
            let h = hat(&l, n, k)?;
            let pretty = format!("dual of ({l}) twisted by det^{k} equals ({h}): {ok}\n");
            Ok(Report::new(
                pretty,
                json!({ "lambda": l, "hat": h, "holds": ok }),
                vec![format!("\"{l}\",\"{h}\",{ok}")],
            )
            .with_ok(ok))
        }
        SwCommand::Ext { a, b } => {
            let p = cfg.p()?;
            if a.kind != b.kind {
                return Err(usage("both labels must have the same kind"));
            }
            let (la, lb) = (a.partition(p), b.partition(p));
            let q = sw_ext_symmetry_expected(&la, &lb, n, k, a.kind, p, cfg.qmax(n))?;
            let left = brute_pair(cfg, n, p, a.kind, &la, &lb)?;
            let right = brute_pair(cfg, n, p, a.kind, &q.right.1, &q.right.2)?;
            let mut same = left.same_dims(&right);
            for c in q.left_closed.iter().chain(&q.right_closed) {
                same &= c.as_vec() == left.as_vec();
            }
            let verdict = if same { "MATCH" } else { "MISMATCH" };
            let pretty = format!(
                "degree {}: {}degree {}: {}{verdict}\n",
                q.left.0,
                table_text(&left, "brute"),
                q.right.0,
                table_text(&right, "brute")
            );
            let js = json!({ "left": left, "right": right, "left_closed": q.left_closed, "right_closed": q.right_closed, "match": same });
            Ok(Report::new(pretty, js, table_csv(&[("left", &left), ("right", &right)])).with_ok(same))
        }
    }
}

fn brute_pair(cfg: &Config, n: usize, p: usize, kind: HookKind, l: &Partition, m: &Partition) -> Result<ExtTable> {
    let a = Label { kind, shape: crate::label::Shape::Part(l.clone()) };
    let b = Label { kind, shape: crate::label::Shape::Part(m.clone()) };
    let alg = cfg.algebra(n, l.weight(), p)?;
    let t = ext_dims_with_budget(&a.module(&alg, p)?, &b.module(&alg, p)?, cfg.qmax(n), cfg.budget)?;
    Ok(ExtTable::new(a.to_string(), b.to_string(), &t.as_vec()))
}

/// `b2_01` → `(2, 0, 1)`: degree, then the two single-digit indices.
fn parse_symbol(s: &str) -> Result<(usize, usize, usize)> {
    let bad = || usage(format!("bad symbol {s:?}; expected b<t>_<j><i>"));
    let rest = s.trim().strip_prefix('b').ok_or_else(bad)?;
    let (t, ji) = rest.split_once('_').ok_or_else(bad)?;
    let t = t.parse().map_err(|_| bad())?;
    let digits: Vec<usize> =
        ji.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>().ok_or_else(bad)?;
    match digits[..] {
        [j, i] => Ok((t, j, i)),
        _ => Err(bad()),
    }
}

fn cmd_yoneda(cfg: &Config, table: bool, products: &[String]) -> Result<Report> {
    let n = cfg.n()?;
    let rep = yoneda_convention_report(n)?;
    let b = yoneda_B(n)?;
    let sym = |a: usize| {
        let (t, j, i) = b.basis[a];
        format!("b{t}_{j}{i}")
    };
    let mut pretty = format!("convention: {:?}", b.convention);
    if let Err(f) = &rep.verbatim {
        write!(pretty, " (verbatim reading fails: {f:?})")?;
    }
    writeln!(pretty, "\ndimension: {}", b.dim())?;
    let names: Vec<String> = (0..b.dim()).map(sym).collect();
    writeln!(pretty, "basis: {}", names.join(" "))?;
    let mut rows = Vec::new();
    let mut csv = vec!["left,right,product".to_string()];
    let mut record = |x: usize, y: usize, pretty: &mut String| {
        let z = b.mul(x, y).map(sym).unwrap_or_else(|| "0".into());
        let _ = writeln!(pretty, "{} * {} = {z}", sym(x), sym(y));
        csv.push(format!("{},{},{z}", sym(x), sym(y)));
        rows.push(json!([sym(x), sym(y), z]));
    };
    if table {
        for x in 0..b.dim() {
            for y in 0..b.dim() {
                if b.mul(x, y).is_some() {
                    record(x, y, &mut pretty);
                }
            }
        }
    }
    for pr in products {
        let (l, r) = pr.split_once('*').ok_or_else(|| usage(format!("product {pr:?} needs a '*'")))?;
        let look = |s: &str| -> Result<usize> {
            let (t, j, i) = parse_symbol(s)?;
            b.index_of(t, j, i).ok_or_else(|| usage(format!("{s} is not a basis symbol for n = {n}")))
        };
        let (x, y) = (look(l)?, look(r)?);
        record(x, y, &mut pretty);
    }
    let js = json!({
        "n": n,
        "convention": format!("{:?}", b.convention),
        "basis": names,
        "products": rows,
    });
    Ok(Report::new(pretty, js, csv))
}

fn hook_of(label: &Label, p: usize, n: usize) -> Result<usize> {
    match label.hook_index(Some(p)) {
        Some(i) if i < n => Ok(i),
        _ => Err(usage(format!("{label} is not a hook with index below n = {n}"))),
    }
}

fn compare_text(title: &str, got: &[u64], exp: &[u64]) -> (String, bool) {
    let ok = got == exp;
    let verdict = if ok { "MATCH" } else { "MISMATCH" };
    (format!("{title}\ncomputed: {}\nexpected: {}\n{verdict}\n", join(got), join(exp)), ok)
}

fn compare_csv(got: &[u64], exp: &[u64]) -> Vec<String> {
    let mut rows = vec!["q,computed,expected".to_string()];
    rows.extend(got.iter().zip(exp).enumerate().map(|(q, (g, e))| format!("{q},{g},{e}")));
    rows
}

fn shifted_terms(terms: &[(usize, schurkit::closedforms::Symbol)]) -> Vec<String> {
    terms.iter().map(|(q, s)| if *q == 0 { s.to_string() } else { format!("{s}[-{q}]") }).collect()
}

fn cmd_rs(cfg: &Config, label: &Label) -> Result<Report> {
    let (p, n) = (cfg.p()?, cfg.n()?);
    let i = hook_of(label, p, n)?;
    let qmax = cfg.qmax(n);
    let alg = cfg.algebra(n, p, p)?;
    let got: Vec<u64> = rs_dims(&label.module(&alg, p)?, qmax)?.as_vec().iter().map(|&x| x as u64).collect();
    let expected = rs_expected(n, label.kind, i)?;
    let exp = expected.dims(p, n, qmax)?;
    let terms = shifted_terms(&expected.terms);
    let (pretty, ok) = compare_text(&format!("H^*(Rs {label}) at p={p}, n={n}: {}", terms.join(" + ")), &got, &exp);
    let js = json!({ "label": label.to_string(), "computed": got, "expected": exp, "terms": terms, "match": ok });
    Ok(Report::new(pretty, js, compare_csv(&got, &exp)).with_ok(ok))
}

fn cmd_rjstar(cfg: &Config, label: &Label, m: Option<usize>) -> Result<Report> {
    let (p, n) = (cfg.p()?, cfg.n()?);
    let i = hook_of(label, p, n)?;
    let m = m.unwrap_or(n + 1);
    if m < n {
        return Err(usage("the larger category needs m >= n"));
    }
    let qmax = cfg.qmax.unwrap_or(n + 1);
    let small = cfg.algebra(n, p, p)?;
    let big = cfg.algebra(m, p, p)?;
    let rec = Recollement::new(&big, &small)?;
    eprintln!("resolving {label} over S({n},{p}) at p = {p}");
    let h = rec.r_jlowerstar_cohomology(&label.module(&small, p)?, qmax)?;
    let got: Vec<u64> = h.iter().map(|x| x.dim() as u64).collect();
    let expected = rjstar_expected(n, label.kind, i)?;
    let exp = expected.dims(p, m, qmax)?;
    let terms = shifted_terms(&expected.terms);
    let title = format!("dim H^*(Rj_* {label}) on k^{m} at p={p}: {}", terms.join(" + "));
    let (pretty, ok) = compare_text(&title, &got, &exp);
    let js =
        json!({ "label": label.to_string(), "m": m, "computed": got, "expected": exp, "terms": terms, "match": ok });
    Ok(Report::new(pretty, js, compare_csv(&got, &exp)).with_ok(ok))
}

fn character_report(title: String, c: &LaurentCharacter) -> Report {
    let mut pretty = format!("{title}\ndimension: {}\n", c.eval_ones());
    let mut csv = vec!["exponent,coefficient".to_string()];
    let mut terms = Vec::new();
    for (e, k) in c.terms() {
        let _ = writeln!(pretty, "  x^({}): {k}", join(e));
        csv.push(format!("\"{}\",{k}", join(e)));
        terms.push(json!([e, k]));
    }
    Report::new(pretty, json!({ "dimension": c.eval_ones(), "terms": terms }), csv)
}

fn cmd_character(cfg: &Config, lambda: &str, simple: bool) -> Result<Report> {
    let n = cfg.n()?;
    let l = partition(lambda)?;
    if simple {
        let p = cfg.p()?;
        let alg = cfg.algebra(n, l.weight(), p)?;
        let c = simple_general(&alg, &l)?.weight_character()?;
        return Ok(character_report(format!("char F_({l}) on k^{n} at p={p}"), &c));
    }
    Ok(character_report(format!("char S_({l}) on k^{n}"), &char_costandard(&l, n)))
}

fn cmd_module(cfg: &Config, label: &Label, dump_full: bool) -> Result<Report> {
    let (p, n) = (cfg.p()?, cfg.n()?);
    let l = label.partition(p);
    let d = cfg.degree(&[&l])?;
    let alg = cfg.algebra(n, d, p)?;
    let m = label.module(&alg, p).with_context(|| format!("building {label}"))?;
    let mut pretty =
        format!("{label} over S({n},{d}) at p={p}\ndimension: {}\nweight spaces: {}\n", m.dim(), join(m.dims()));
    let mut js = json!({ "label": label.to_string(), "n": n, "d": d, "p": p, "dim": m.dim(), "weight_dims": m.dims() });
    let mut csv = vec!["vertex,dim".to_string()];
    csv.extend(m.dims().iter().enumerate().map(|(v, x)| format!("{v},{x}")));
    if dump_full {
        let mut gens = Vec::new();
        for &g in alg.generators() {
            let a = m.action(g);
            let rows: Vec<Vec<u32>> = (0..a.rows()).map(|r| a.row(r).to_vec()).collect();
            let (t, s) = alg.ends(g);
            writeln!(pretty, "generator {g} ({s} -> {t}):")?;
            for r in &rows {
                writeln!(pretty, "  {}", join(r))?;
            }
            gens.push(json!({ "basis_index": g, "source": s, "target": t, "matrix": rows }));
        }
        js["generators"] = json!(gens);
    }
    Ok(Report::new(pretty, js, csv))
}

fn cmd_verify(suite: &str, ids: &[usize]) -> Result<Report> {
    let suite: Suite = suite.parse().map_err(|e: schurkit::Error| usage(e.to_string()))?;
    let ids: Vec<usize> = if ids.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { ids.to_vec() };
    let mut reports = Vec::new();
    for id in ids {
        eprintln!("running criterion {id} ({suite})");
        reports.push(run_criterion(id, suite)?);
    }
    let ok = reports.iter().all(|r| r.passed);
    let pretty: Vec<String> = reports.iter().map(ToString::to_string).collect();
    let mut csv = vec!["criterion,passed,millis".to_string()];
    csv.extend(reports.iter().map(|r| format!("{},{},{}", r.id, r.passed, r.millis)));
    Ok(Report::new(pretty.join("\n"), json!({ "suite": suite, "criteria": reports, "passed": ok }), csv).with_ok(ok))
}
