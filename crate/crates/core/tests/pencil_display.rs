//! The symbolic pencils must reproduce the published circle, ellipse and
//! 3-ellipse matrices entry by entry.

use std::collections::BTreeMap;

use kellipse::pencil::{assignment, build_symbolic_planar_pencil, AffinePencil};
use kellipse::rational::{int, Rational};

/// Parses an affine form such as `d+3x-u1-u2-u3` into `{var: coeff}`;
/// the constant term is stored under `""`.
fn affine(text: &str) -> BTreeMap<String, i64> {
    let mut out = BTreeMap::new();
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        if (c == '+' || c == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    terms.push(cur);
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, t.trim_start_matches('+')),
        };
        let digits: String = body.chars().take_while(|c| c.is_ascii_digit()).collect();
        let var = &body[digits.len()..];
        let coeff = if digits.is_empty() { 1 } else { digits.parse().unwrap() };
        *out.entry(var.to_string()).or_insert(0) += sign * coeff;
    }
    out.retain(|_, v| *v != 0);
    out
}

fn assert_matches(pencil: &AffinePencil, rows: &[&[&str]]) {
    let m = rows.len();
    assert_eq!(pencil.size(), m);
    let vars: Vec<String> = pencil.vars().to_vec();
    let zero: BTreeMap<String, Rational> = vars.iter().map(|v| (v.clone(), int(0))).collect();
    let base = pencil.eval_exact(&zero).unwrap();
    let mut unit = Vec::new();
    for v in &vars {
        let mut a = zero.clone();
        a.insert(v.clone(), int(1));
        unit.push(pencil.eval_exact(&a).unwrap());
    }
    for i in 0..m {
        for j in 0..m {
            let want = affine(rows[i][j]);
            let mut got = BTreeMap::new();
            if base[(i, j)] != int(0) {
                got.insert(String::new(), base[(i, j)].clone());
            }
            for (v, mat) in vars.iter().zip(&unit) {
                let c = &mat[(i, j)] - &base[(i, j)];
                if c != int(0) {
                    got.insert(v.clone(), c);
                }
            }
            let want: BTreeMap<String, Rational> = want.into_iter().map(|(k, v)| (k, int(v))).collect();
            assert_eq!(got, want, "entry ({}, {})", i + 1, j + 1);
        }
    }
}

#[test]
fn circle_display() {
    let p = build_symbolic_planar_pencil(1, None).unwrap();
    assert_matches(&p, &[&["d+x-u1", "y-v1"], &["y-v1", "d-x+u1"]]);
}

#[test]
fn ellipse_display() {
    let p = build_symbolic_planar_pencil(2, None).unwrap();
    assert_matches(
        &p,
        &[
            &["d+2x-u1-u2", "y-v1", "y-v2", "0"],
            &["y-v1", "d+u1-u2", "0", "y-v2"],
            &["y-v2", "0", "d-u1+u2", "y-v1"],
            &["0", "y-v2", "y-v1", "d-2x+u1+u2"],
        ],
    );
}

#[test]
fn three_ellipse_display() {
    let p = build_symbolic_planar_pencil(3, None).unwrap();
    assert_matches(
        &p,
        &[
            &["d+3x-u1-u2-u3", "y-v1", "y-v2", "0", "y-v3", "0", "0", "0"],
            &["y-v1", "d+x+u1-u2-u3", "0", "y-v2", "0", "y-v3", "0", "0"],
            &["y-v2", "0", "d+x-u1+u2-u3", "y-v1", "0", "0", "y-v3", "0"],
            &["0", "y-v2", "y-v1", "d-x+u1+u2-u3", "0", "0", "0", "y-v3"],
            &["y-v3", "0", "0", "0", "d+x-u1-u2+u3", "y-v1", "y-v2", "0"],
            &["0", "y-v3", "0", "0", "y-v1", "d-x+u1-u2+u3", "0", "y-v2"],
            &["0", "0", "y-v3", "0", "y-v2", "0", "d-x-u1+u2+u3", "y-v1"],
            &["0", "0", "0", "y-v3", "0", "y-v2", "y-v1", "d-3x+u1+u2+u3"],
        ],
    );
}

#[test]
fn numeric_pencil_is_specialization() {
    use kellipse::pencil::build_planar_pencil;
    use kellipse::FociConfig;
    let cfg = FociConfig::planar_int(&[(1, -2), (3, 5), (-4, 0)], 9).unwrap();
    let numeric = build_planar_pencil(&cfg, false).unwrap();
    let symbolic = build_symbolic_planar_pencil(3, None).unwrap();
    let point = [("x", int(2)), ("y", int(-1))];
    let mut full = vec![("d", int(9)), ("u1", int(1)), ("v1", int(-2)), ("u2", int(3)), ("v2", int(5)), ("u3", int(-4)), ("v3", int(0))];
    full.extend(point.iter().cloned());
    assert_eq!(
        numeric.eval_exact(&assignment(&point)).unwrap(),
        symbolic.eval_exact(&assignment(&full)).unwrap()
    );
}
