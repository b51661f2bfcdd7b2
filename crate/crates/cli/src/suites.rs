//! The suites behind each subcommand. Every suite is a pure function of the
//! configuration, so identical configs give identical rows.

use std::fmt::Display;

use parind::arith::padic::PrimeContext;
use parind::arith::rational::{format_rational, int, rat};
use parind::characters::{character_pairing, induction_check};
use parind::hecke::{double_coset_indicator, level_one_basis, res_normalized, res_unnormalized};
use parind::orbital::{descent_sides_with, orbital_integral, regular_grid};
use parind::saturation::{
    curated_instances, product_rule_check, sat_fixpoint, sat_prime_member, verify_witness,
    ConstructibleSet, MPoly, Universe,
};
use parind::unipotent::{count_unipotents, heart, induce_both, levi_classes, CLOSURE_BRIDGE};
use parind::{
    Ambient, BlockParabolic, Error, HeckeMeasure, InducedModel, Rational, RationalMatrix,
    UnramifiedCharacter,
};

use crate::report::Row;
use crate::{CliError, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Restriction,
    Characters,
    Orbital,
    Unipotent,
    Saturate,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Restriction,
        Suite::Characters,
        Suite::Orbital,
        Suite::Unipotent,
        Suite::Saturate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Restriction => "restriction",
            Suite::Characters => "characters",
            Suite::Orbital => "orbital",
            Suite::Unipotent => "unipotent",
            Suite::Saturate => "saturate",
        }
    }

    fn run(self, cfg: &RunConfig) -> Result<Vec<Row>, CliError> {
        let rows = match self {
            Suite::Restriction => run_restriction(cfg),
            Suite::Characters => run_characters(cfg),
            Suite::Orbital => run_orbital(cfg),
            Suite::Unipotent => run_unipotent(cfg),
            Suite::Saturate => run_saturate(cfg),
        };
        rows.map_err(|source| CliError::Core {
            suite: self.name(),
            source,
        })
    }
}

/// Runs the suites concurrently and concatenates their rows in the given order.
pub fn run(suites: &[Suite], cfg: &RunConfig) -> Result<Vec<Row>, CliError> {
    let results: Vec<Result<Vec<Row>, CliError>> = std::thread::scope(|s| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| s.spawn(move || suite.run(cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite panicked"))
            .collect()
    });
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    Ok(rows)
}

fn point(xs: &[Rational]) -> String {
    let parts: Vec<String> = xs.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn joined<T: Display>(xs: &[T]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("")
}

fn parabolics(cfg: &RunConfig) -> parind::Result<Vec<BlockParabolic>> {
    cfg.orientations
        .iter()
        .map(|&o| BlockParabolic::for_dimension(cfg.n, cfg.blocks.clone(), o))
        .collect()
}

fn characters(cfg: &RunConfig) -> parind::Result<Vec<UnramifiedCharacter>> {
    cfg.characters
        .iter()
        .map(|c| UnramifiedCharacter::new(c.clone()))
        .collect()
}

/// The Ad-symmetrized level-one basis on GL₂; otherwise the unit and the
/// indicator of `K₀ diag(p, 1, …, 1) K₀` at the configured level.
pub fn basis(cfg: &RunConfig) -> parind::Result<Vec<HeckeMeasure>> {
    if cfg.n == 2 && cfg.m == 1 {
        return level_one_basis(2, cfg.p, cfg.guard);
    }
    let ctx = PrimeContext::new(cfg.p, cfg.m)?;
    let mut diag = vec![int(1); cfg.n];
    diag[0] = int(cfg.p as i64);
    Ok(vec![
        HeckeMeasure::unit(Ambient::general(cfg.n), ctx, cfg.guard)?,
        double_coset_indicator(&RationalMatrix::diagonal(&diag), ctx, cfg.guard)?,
    ])
}

pub fn run_restriction(cfg: &RunConfig) -> parind::Result<Vec<Row>> {
    const S: &str = "restriction";
    let basis = basis(cfg)?;
    let ps = parabolics(cfg)?;
    let chars = characters(cfg)?;
    let gammas = if cfg.n == 2 && cfg.blocks == [1, 1] {
        regular_grid(cfg.p, cfg.window.0, cfg.window.1, &cfg.unit)?
    } else {
        Vec::new()
    };
    let mut rows = Vec::new();
    for (i, h) in basis.iter().enumerate() {
        rows.push(Row::info(
            S,
            "basis measure",
            format!("h{i}"),
            h.to_string(),
        ));
        let mut normalized = Vec::new();
        for p in &ps {
            rows.push(Row::info(
                S,
                "unnormalized restriction",
                format!("h{i} via {p}"),
                res_unnormalized(h, p, cfg.guard)?.to_string(),
            ));
            let r = res_normalized(h, p, cfg.guard)?;
            rows.push(Row::info(
                S,
                "normalized restriction",
                format!("h{i} via {p}"),
                r.to_string(),
            ));
            normalized.push((p, r));
        }
        let Some(((p0, r0), rest)) = normalized.split_first() else {
            continue;
        };
        for (p1, r1) in rest {
            for chi in &chars {
                rows.push(Row::compare(
                    S,
                    "normalized restriction independent of parabolic: character pairing",
                    format!("h{i}, χ = {chi}, {p1} against {p0}"),
                    character_pairing(chi, r1)?.to_string(),
                    character_pairing(chi, r0)?.to_string(),
                ));
            }
            for g in &gammas {
                rows.push(Row::compare(
                    S,
                    "normalized restriction independent of parabolic: orbital pairing",
                    format!("h{i}, γ = {g}, {p1} against {p0}"),
                    orbital_integral(r1, g, cfg.guard)?.value.to_string(),
                    orbital_integral(r0, g, cfg.guard)?.value.to_string(),
                ));
            }
        }
    }
    Ok(rows)
}

pub fn run_characters(cfg: &RunConfig) -> parind::Result<Vec<Row>> {
    const S: &str = "characters";
    let basis = basis(cfg)?;
    let chars = characters(cfg)?;
    let ctx = PrimeContext::new(cfg.p, cfg.m)?;
    let mut rows = Vec::new();
    for p in parabolics(cfg)? {
        let model = InducedModel::new(&p, ctx, cfg.guard)?;
        for (i, h) in basis.iter().enumerate() {
            for chi in &chars {
                let c = induction_check(h, chi, &model)?;
                let case = format!("h{i}, χ = {chi}, {p}");
                rows.push(Row::compare(
                    S,
                    "trace on induced representation equals pairing with restriction",
                    case.clone(),
                    c.trace.to_string(),
                    c.pairing.to_string(),
                ));
                rows.push(Row::compare(
                    S,
                    "trace on normalized induction equals pairing with normalized restriction",
                    case,
                    c.trace_normalized.to_string(),
                    c.pairing_normalized.to_string(),
                ));
            }
        }
    }
    Ok(rows)
}

/// Descent of orbital integrals to the diagonal torus of GL₂. With
/// `corrupt_normalization` the factor `|Δ|` replaces `|Δ|^{1/2}`.
pub fn run_orbital(cfg: &RunConfig) -> parind::Result<Vec<Row>> {
    const S: &str = "orbital";
    if cfg.n != 2 || cfg.blocks != [1, 1] {
        return Err(Error::Unsupported(format!(
            "orbital descent is implemented for the Borel of GL_2, not blocks {:?} of GL_{}",
            cfg.blocks, cfg.n
        )));
    }
    let half_powers = if cfg.corrupt_normalization { 2 } else { 1 };
    let basis = basis(cfg)?;
    let gammas = regular_grid(cfg.p, cfg.window.0, cfg.window.1, &cfg.unit)?;
    let mut rows = Vec::new();
    for p in parabolics(cfg)? {
        for (i, h) in basis.iter().enumerate() {
            let r = res_normalized(h, &p, cfg.guard)?;
            for g in &gammas {
                let s = descent_sides_with(h, &r, g, &p, half_powers, cfg.guard)?;
                rows.push(Row::compare(
                    S,
                    "orbital integral descends to the Levi with |Δ_{M,G}|^(1/2)",
                    format!("h{i}, γ = {g}, {p}"),
                    s.group_side.to_string(),
                    s.levi_side.to_string(),
                ));
            }
        }
    }
    Ok(rows)
}

pub fn run_unipotent(cfg: &RunConfig) -> parind::Result<Vec<Row>> {
    const S: &str = "unipotent";
    let mut rows = vec![Row::info(S, "closure convention", "", CLOSURE_BRIDGE)];
    for &(n, q) in &cfg.fields {
        for blocks in BlockParabolic::compositions(n) {
            for parts in levi_classes(&blocks) {
                let (up, lo) = induce_both(&blocks, &parts, q, cfg.guard)?;
                let case = format!("GL{n}(F{q}), blocks {blocks:?}, class {}", joined(&parts));
                let classes = |d: &parind::InducedSet| {
                    d.classes
                        .iter()
                        .map(|(k, v)| format!("{k}:{v}"))
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                let hearts =
                    |d: &parind::InducedSet| joined(&heart(d).into_iter().collect::<Vec<_>>());
                rows.push(Row::compare(
                    S,
                    "induced set independent of parabolic",
                    case.clone(),
                    classes(&lo),
                    classes(&up),
                ));
                rows.push(Row::compare(
                    S,
                    "heart independent of parabolic",
                    case.clone(),
                    hearts(&lo),
                    hearts(&up),
                ));
                rows.push(Row::info(S, "heart (upper)", case.clone(), hearts(&up)));
                rows.push(Row::info(S, "heart (lower)", case, hearts(&lo)));
            }
        }
        let expected = (q as u64).pow((n * (n - 1)) as u32);
        rows.push(Row::compare(
            S,
            "number of unipotent elements is q^(n(n-1))",
            format!("GL{n}(F{q})"),
            count_unipotents(n, q, cfg.guard)?.to_string(),
            expected.to_string(),
        ));
    }
    Ok(rows)
}

type ProductCase<'a> = (
    &'a str,
    &'a ConstructibleSet,
    &'a ConstructibleSet,
    Vec<(Vec<Rational>, Vec<Rational>)>,
);

pub fn run_saturate(cfg: &RunConfig) -> parind::Result<Vec<Row>> {
    const S: &str = "saturate";
    let u = cfg.universe;
    let mut rows = Vec::new();
    let witness_row = |rows: &mut Vec<Row>,
                       case: String,
                       a: &ConstructibleSet,
                       pt: &[Rational],
                       w: &parind::CurveWitness| {
        rows.push(Row::verdict(
            S,
            "witness verifies",
            case,
            w.to_string(),
            verify_witness(w, a) && w.limit_point() == pt,
        ));
    };

    for inst in curated_instances() {
        let found = sat_prime_member(&inst.set, &inst.point, &u)?;
        let show = |d: Option<usize>| d.map_or("no witness".to_string(), |d| format!("degree {d}"));
        let case = format!("{} at {}", inst.name, point(&inst.point));
        if let Some(w) = &found {
            witness_row(&mut rows, case.clone(), &inst.set, &inst.point, w);
        }
        let expected = inst.expected_degree.filter(|&d| d <= u.degree);
        rows.push(Row::compare(
            S,
            "curated membership",
            case,
            show(found.as_ref().map(|w| w.degree())),
            show(expected),
        ));
    }

    let punctured = ConstructibleSet::cofinite_line(&[int(0)]);
    let axes =
        ConstructibleSet::complement_of_hypersurface(MPoly::var(2, 0).mul(&MPoly::var(2, 1)));
    let finite = ConstructibleSet::points(1, &[vec![int(0)], vec![int(2)]])?;
    let product_cases: [ProductCase; 3] = [
        (
            "punctured line × punctured line",
            &punctured,
            &punctured,
            vec![(vec![int(0)], vec![int(0)]), (vec![int(3)], vec![int(0)])],
        ),
        (
            "axes complement × punctured line",
            &axes,
            &punctured,
            vec![
                (vec![int(0), int(0)], vec![int(0)]),
                (vec![int(0), int(2)], vec![int(1)]),
            ],
        ),
        (
            "finite set × punctured line",
            &finite,
            &punctured,
            vec![(vec![int(1)], vec![int(0)]), (vec![int(2)], vec![int(0)])],
        ),
    ];
    for (name, a, b, samples) in &product_cases {
        for row in product_rule_check(a, b, samples, &u)? {
            let value = format!(
                "factors {}, combined {}, direct {}, projections {}",
                row.factor_witnesses,
                row.combined_verified,
                row.direct_found,
                row.projections_verified
            );
            rows.push(Row::verdict(
                S,
                "product rule",
                format!(
                    "{name} at {} × {}",
                    point(&row.a_point),
                    point(&row.b_point)
                ),
                value,
                row.holds(),
            ));
        }
    }

    let line_universe = Universe { degree: 1, ..u };
    for n in 1..=3usize {
        let g = (0..n)
            .fold(MPoly::constant(n, int(1)), |acc, i| {
                acc.mul(&MPoly::var(n, i))
            })
            .sub(&MPoly::constant(n, int(1)));
        let y = ConstructibleSet::complement_of_hypersurface(g);
        for k in 0..8i64 {
            let mut pt: Vec<Rational> = (0..n as i64)
                .map(|i| rat((k * 7 + i * 3) % 13 - 6, 1 + (k + i) % 3))
                .collect();
            if k % 2 == 0 && n > 1 && pt[1..].iter().all(|x| *x != int(0)) {
                pt[0] = int(1) / pt[1..].iter().product::<Rational>();
            }
            let case = format!("complement of x1⋯x{n} = 1 at {}", point(&pt));
            match sat_prime_member(&y, &pt, &line_universe)? {
                Some(w) => {
                    let ok = w.degree() <= 1 && verify_witness(&w, &y) && w.limit_point() == pt;
                    rows.push(Row::verdict(
                        S,
                        "open dense subset: line through every point",
                        case,
                        w.to_string(),
                        ok,
                    ));
                }
                None => rows.push(Row::verdict(
                    S,
                    "open dense subset: line through every point",
                    case,
                    "no witness",
                    false,
                )),
            }
        }
    }

    let excluded = [int(-1), int(0), rat(2, 3)];
    let cofinite = ConstructibleSet::cofinite_line(&excluded);
    for e in &excluded {
        let case = format!("line minus {} at {}", point(&excluded), format_rational(e));
        match sat_prime_member(&cofinite, std::slice::from_ref(e), &u)? {
            Some(w) => witness_row(&mut rows, case, &cofinite, std::slice::from_ref(e), &w),
            None => rows.push(Row::verdict(
                S,
                "cofinite subset of the line is not saturated",
                case,
                "no witness",
                false,
            )),
        }
    }
    let cloud: Vec<Vec<Rational>> = (-3..=3).map(|k| vec![int(k)]).collect();
    let fp = sat_fixpoint(&finite, &u, &cloud, 3)?;
    let members: Vec<String> = fp.points().iter().map(|p| point(p)).collect();
    rows.push(Row::compare(
        S,
        "finite subset of the line is saturated",
        "{0, 2} on -3..3",
        format!("{} after {} rounds", members.join(" "), fp.rounds),
        "(0) (2) after 0 rounds",
    ));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;
    use parind::Orientation;

    #[test]
    fn corrupted_descent_fails_somewhere() {
        let cfg = RunConfig {
            corrupt_normalization: true,
            orientations: vec![Orientation::Upper],
            ..RunConfig::default()
        };
        let rows = run_orbital(&cfg).unwrap();
        assert!(rows.iter().any(|r| r.status == Status::Fail));
    }

    #[test]
    fn orbital_outside_gl2_is_unsupported() {
        let cfg = RunConfig {
            n: 3,
            blocks: vec![2, 1],
            ..RunConfig::default()
        };
        assert!(matches!(run_orbital(&cfg), Err(Error::Unsupported(_))));
    }
}
