use super::*;
use crate::ring::{lambda_embed, FieldContext};

fn ctx(level: u64) -> Arc<FieldContext> {
    FieldContext::new(level).unwrap()
}

fn int_row(c: &Arc<FieldContext>, t: &[i64]) -> QuiddityRow {
    QuiddityRow::new(t.iter().map(|&x| RingElement::from_integer(c, x)).collect()).unwrap()
}

const DECAGON_Q: [u64; 10] = [1, 2, 1, 1, 3, 2, 1, 1, 2, 2];

fn decagon() -> Frieze {
    let c = ctx(4);
    frieze_from_quiddity(&QuiddityRow::from_multiples(&c, &DECAGON_Q, 4).unwrap()).unwrap()
}

fn heptagon() -> Frieze {
    let c = ctx(6);
    let s3 = lambda_embed(&c, 6).unwrap();
    let one = RingElement::one(&c);
    let t = vec![s3.clone(), s3.clone(), &one + &s3, one.clone(), &one + &s3, s3.clone(), s3];
    frieze_from_quiddity(&QuiddityRow::new(t).unwrap()).unwrap()
}

/// Fills the pattern row by row with the diamond rule alone:
/// F(i, j+1) = (F(i, j)·F(i+1, j+1) − 1) / F(i+1, j). Returns rows 0 … N as
/// functions of i over one period, or `None` if a division by zero occurs.
fn diamond_fill(q: &QuiddityRow) -> Option<Vec<Vec<RingElement>>> {
    let n = q.len();
    let c = q.context();
    // rows[k][i mod n] = F(i, i+k)
    let mut rows = vec![vec![RingElement::zero(c); n], vec![RingElement::one(c); n]];
    // F(i, i+2) = t_{i+1}
    rows.push((0..n).map(|i| q.entries()[(i + 1) % n].clone()).collect());
    for k in 2..n {
        let next = (0..n)
            .map(|i| {
                let num = &(&rows[k][i] * &rows[k][(i + 1) % n]) - &RingElement::one(c);
                num.try_div(&rows[k - 1][(i + 1) % n]).ok()
            })
            .collect::<Option<Vec<_>>>()?;
        rows.push(next);
    }
    Some(rows)
}

fn tokens(line: &str) -> Vec<String> {
    line.split_whitespace().map(str::to_string).collect()
}

#[test]
fn decagon_quiddity_and_first_rows() {
    let f = decagon();
    let s2 = lambda_embed(f.context(), 4).unwrap();
    assert_eq!(f.get(0, 2), &s2.scale(&2.into()));
    assert_eq!(f.get(0, 3), &RingElement::from_integer(f.context(), 3));
    assert_eq!(frieze_type(&f, 4).unwrap(), DECAGON_Q.to_vec());
    assert!(matrix_word_check(&f));
    assert!(validate_frieze(&f).is_valid());
}

#[test]
fn decagon_pattern_rows_match() {
    let text = render_pattern_text(&decagon(), 1);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 11);
    // Rows from the bottom of the printed pattern, k = 0 … 10.
    let expected: [&str; 11] = [
        "0 0 0 0 0 0 0 0 0 0",
        "1 1 1 1 1 1 1 1 1 1",
        "√2 2√2 √2 √2 3√2 2√2 √2 √2 2√2 2√2",
        "3 3 1 5 11 3 1 3 7 3",
        "4√2 2√2 √2 2√2 9√2 8√2 √2 √2 5√2 5√2",
        "5 1 3 7 13 5 1 3 7 13",
        "8√2 √2 √2 5√2 5√2 4√2 2√2 √2 2√2 9√2",
        "3 1 3 7 3 3 3 1 5 11",
        "2√2 √2 √2 2√2 2√2 √2 2√2 √2 √2 3√2",
        "1 1 1 1 1 1 1 1 1 1",
        "0 0 0 0 0 0 0 0 0 0",
    ];
    for (k, want) in expected.iter().enumerate() {
        assert_eq!(tokens(lines[10 - k]), tokens(want), "row {k}");
    }
    // odd rows sit half a cell to the right
    let indent = |l: &str| l.len() - l.trim_start().len();
    assert!(indent(lines[10 - 1]) > indent(lines[10]));
    assert!(indent(lines[10 - 3]) > indent(lines[10 - 4]));
}

#[test]
fn heptagon_pattern_rows_match_up_to_translation() {
    let f = heptagon();
    assert!(validate_frieze(&f).is_valid());
    let text = render_pattern_text(&f, 2);
    let lines: Vec<&str> = text.lines().collect();
    let expected: [&str; 4] = [
        "√3 √3 1+√3 1 1+√3 √3 √3",
        "2 2 2+√3 √3 √3 2+√3 2",
        "√3 2+√3 2 2 2 2+√3 √3",
        "1 1+√3 √3 √3 √3 √3 1+√3",
    ];
    for (offset, want) in expected.iter().enumerate() {
        let k = offset + 2;
        let row = tokens(lines[7 - k]);
        let want = tokens(want);
        let found = (0..7).any(|r| row[r..r + 7] == want[..]);
        assert!(found, "row {k}: {row:?} has no period equal to {want:?}");
    }
    assert!(f.entries().iter().any(|e| e.to_string() == "2+√3"));
}

#[test]
fn recurrence_agrees_with_diamond_filler() {
    for f in [decagon(), heptagon()] {
        let rows = diamond_fill(&quiddity_of(&f)).expect("no zero divisors in a positive frieze");
        let n = f.n_vertices();
        for (k, row) in rows.iter().enumerate() {
            for (i, want) in row.iter().enumerate() {
                let got = pattern_entry(&f, i as i64, (i + k) as i64).unwrap();
                assert_eq!(&got, want, "F({i},{})", i + k);
            }
        }
        assert_eq!(rows.len(), n + 1);
        assert!(rows[n].iter().all(RingElement::is_zero));
    }
}

/// Integer quiddity rows with entries in 1..=max, as a brute-force
/// generator for small N.
fn all_rows(n: usize, max: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|r: Vec<i64>| (1..=max).map(move |x| [r.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

#[test]
fn integer_friezes_of_small_polygons_exhaustively() {
    let c = ctx(3);
    for (n, catalan) in [(3usize, 1usize), (4, 2), (5, 5), (6, 14)] {
        let mut found = 0;
        for t in all_rows(n, n as i64 - 2) {
            let q = int_row(&c, &t);
            let built = frieze_from_quiddity(&q);
            // the diamond filler closes up with a zero row iff the row is a
            // frieze quiddity
            let oracle = diamond_fill(&q).is_some_and(|rows| {
                rows[n].iter().all(RingElement::is_zero)
                    && rows[1..n].iter().flatten().all(RingElement::is_positive)
            });
            assert_eq!(built.is_ok(), oracle, "N={n} t={t:?}");
            if let Ok(f) = built {
                found += 1;
                assert!(validate_frieze(&f).is_valid());
                assert!(matrix_word_check(&f));
            }
        }
        assert_eq!(found, catalan, "N={n}");
    }
}

#[test]
fn square_quiddities() {
    let c = ctx(3);
    let f = frieze_from_quiddity(&int_row(&c, &[1, 2, 1, 2])).unwrap();
    assert_eq!(frieze_type(&f, 3).unwrap(), vec![1, 2, 1, 2]);
    assert!(frieze_from_quiddity(&int_row(&c, &[2, 1, 2, 1])).is_ok());
    assert!(matches!(frieze_from_quiddity(&int_row(&c, &[1, 1, 1, 1])), Err(Error::NotAFrieze(_))));
    assert!(!int_row(&c, &[1, 1, 1, 1]).matrix_word().is_minus_identity());
}

#[test]
fn triangle_and_too_short_rows() {
    let c = ctx(3);
    let f = frieze_from_quiddity(&int_row(&c, &[1, 1, 1])).unwrap();
    assert_eq!(f.n_vertices(), 3);
    assert!(frieze_from_quiddity(&int_row(&c, &[1, 2, 1])).is_err());
    assert_eq!(QuiddityRow::new(vec![RingElement::one(&c); 2]).unwrap_err(), Error::TooFewVertices(2));
}

#[test]
fn closing_but_negative_row_fails_positivity() {
    let c = ctx(3);
    let q = int_row(&c, &[-1, -2, -1, -2]);
    assert!(q.matrix_word().is_minus_identity());
    assert!(matches!(frieze_from_quiddity(&q), Err(Error::Positivity(_))));
}

#[test]
fn pentagon_of_golden_ratios() {
    let c = ctx(5);
    let phi = lambda_embed(&c, 5).unwrap();
    let f = frieze_from_quiddity(&QuiddityRow::new(vec![phi.clone(); 5]).unwrap()).unwrap();
    for a in 0..5 {
        assert_eq!(f.get(a, (a + 2) % 5), &phi);
    }
    assert_eq!(frieze_type(&f, 5).unwrap(), vec![1; 5]);
}

#[test]
fn mixed_levels_rejected() {
    let a = RingElement::one(&ctx(4));
    let b = RingElement::one(&ctx(6));
    assert_eq!(QuiddityRow::new(vec![a.clone(), b, a]).unwrap_err(), Error::ContextMismatch { left: 4, right: 6 });
}

#[test]
fn glide_reflection_and_strip() {
    let f = decagon();
    let n = f.n_vertices() as i64;
    for i in -12..12 {
        for k in 0..=n {
            let j = i + k;
            assert_eq!(pattern_entry(&f, i, j).unwrap(), pattern_entry(&f, j, i + n).unwrap());
            assert_eq!(pattern_entry(&f, i, j).unwrap(), pattern_entry(&f, i + n, j + n).unwrap());
        }
    }
    assert_eq!(pattern_entry(&f, 0, 11).unwrap_err(), Error::OutOfStrip { i: 0, j: 11, n: 10 });
    assert!(pattern_entry(&f, 3, 2).is_err());
    assert!(pattern_entry(&f, 5, 5).unwrap().is_zero());
    assert!(pattern_entry(&f, 5, 15).unwrap().is_zero());
    assert!(pattern_entry(&f, 5, 6).unwrap().is_one());
}

#[test]
fn validation_reports_forged_entries() {
    let f = decagon();
    let report = validate_frieze(&f);
    assert_eq!(report.ptolemy_checked, 210);

    let mut rows: Vec<Vec<RingElement>> = f.rows().iter().map(|r| r.to_vec()).collect();
    rows[2][3] = &rows[2][3] + &RingElement::one(f.context());
    let forged = Frieze::from_rows(f.context(), rows.clone()).unwrap();
    assert!(matches!(validate_frieze(&forged).violation, Some(Violation::Ptolemy { .. })));

    rows[0][1] = RingElement::from_integer(f.context(), 2);
    let forged = Frieze::from_rows(f.context(), rows.clone()).unwrap();
    assert_eq!(validate_frieze(&forged).violation, Some(Violation::EdgeNotOne(0)));

    rows[0][0] = RingElement::one(f.context());
    let forged = Frieze::from_rows(f.context(), rows).unwrap();
    assert_eq!(validate_frieze(&forged).violation, Some(Violation::DiagonalNonZero(0)));
}

#[test]
fn from_rows_checks_shape() {
    let c = ctx(3);
    let z = RingElement::zero(&c);
    let err = Frieze::from_rows(&c, vec![vec![z.clone(); 3], vec![z.clone(); 3], vec![z]]).unwrap_err();
    assert_eq!(err, Error::WrongLength { expected: 2, found: 3 });
}

#[test]
fn restriction_to_a_cell_is_a_frieze() {
    let f = decagon();
    let sub = f.restrict(&[0, 1, 4, 9]);
    assert!(validate_frieze(&sub).is_valid());
    let s2 = lambda_embed(f.context(), 4).unwrap();
    assert_eq!(sub.get(0, 2), &s2);
    assert_eq!(sub.get(1, 3), &s2);
}

#[test]
fn type_detection_needs_the_right_field() {
    let f = decagon();
    assert_eq!(frieze_type(&f, 3), None);
    assert_eq!(frieze_type(&heptagon(), 6), None);
    assert_eq!(frieze_type(&heptagon(), 3), None);
}
