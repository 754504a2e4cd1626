//! Integer lattices, line configurations and their K3 intersection data.

pub mod config;
pub mod graph;
pub mod gram;
pub mod matrix;

pub use config::{
    config_to_gram, e8_chains, family_configuration, lemma_basis, specialization_images, ConfigLine, ConfigPoint,
    Configuration, ConfigurationSpec, CurveKind, NodalCurveSet,
};
pub use graph::Graph;
pub use gram::{
    definite_isometry_small, disc_form_opposite_check, enumerate_roots, orthogonal_complement, pullback_gram,
    transcendental_candidates, Definiteness, DiscriminantForm, GramLattice, Invariants,
};
pub use matrix::{smith_normal_form, IntMatrix, Smith};

use num_bigint::BigInt;
use num_traits::Signed;

use crate::catalog::{push_entry, Catalog, Entry, Mode};
use crate::error::Result;
use crate::report::{Report, Verdict};

/// Graph vertex numbers for a few of the `t = -1` curves, as in the usual
/// picture of the Vinberg graph.
const VINBERG_LABELS: [(u32, &str); 9] = [
    (1, "E100"),
    (4, "E111^z=-1"),
    (5, "E111"),
    (6, "E111^x=-1"),
    (9, "z=0"),
    (11, "E001"),
    (15, "l_inf"),
    (17, "E010"),
    (23, "x=0"),
];

pub(crate) fn catalog_entries(cat: &mut Catalog, mode: &Mode) -> Result<()> {
    let t = match mode {
        Mode::Generic => None,
        Mode::At(v) => Some(v),
    };
    let c = family_configuration(t)?;
    let curves = config_to_gram(&c)?;
    push_entry(cat, "configuration", Entry::Configuration(Box::new(c)));
    push_entry(cat, "nodal-curves", Entry::Curves(Box::new(curves)));
    let [c1, c2] = e8_chains();
    push_entry(cat, "e8-chain-1", Entry::Labels(c1));
    push_entry(cat, "e8-chain-2", Entry::Labels(c2));
    if mode.is_minus_one() {
        let generic = config_to_gram(&family_configuration(None)?)?;
        push_entry(cat, "nodal-curves-generic", Entry::Curves(Box::new(generic)));
        push_entry(cat, "lemma-basis", Entry::Labels(lemma_basis()));
        let labels = VINBERG_LABELS.iter().map(|(n, l)| format!("{n}={l}")).collect();
        push_entry(cat, "vinberg-labels", Entry::Labels(labels));
    }
    Ok(())
}

/// One named group of lattice reports.
#[derive(Clone, Debug)]
pub struct LatticeItem {
    pub name: &'static str,
    pub reports: Vec<Report>,
}

fn failed(claim: &str, e: impl std::fmt::Display) -> Report {
    Report::new(claim, e.to_string(), "no error", Verdict::Fail)
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

/// Configuration, chain and (at `t = -1`) specialization, complement and
/// graph checks for a catalog.
const GENERIC_ITEMS: [&str; 2] = ["configuration", "e8-chains"];
const SPECIAL_ITEMS: [&str; 9] = [
    "configuration",
    "e8-chains",
    "gram-20",
    "complement",
    "chains-complement",
    "specialization",
    "transcendental",
    "five-fold",
    "e8-swap",
];

/// Names of the items [`lattice_suite`] produces for a mode.
pub fn lattice_item_names(mode: &Mode) -> &'static [&'static str] {
    if mode.is_minus_one() {
        &SPECIAL_ITEMS
    } else {
        &GENERIC_ITEMS
    }
}

pub fn lattice_suite(cat: &Catalog) -> Result<Vec<LatticeItem>> {
    let conf = cat.configuration("configuration")?;
    let curves = cat.curves("nodal-curves")?;
    let special = cat.mode().is_minus_one();
    let mut items = vec![
        LatticeItem { name: "configuration", reports: configuration_reports(conf, curves, special) },
        LatticeItem { name: "e8-chains", reports: chain_reports(curves) },
    ];
    if !special {
        return Ok(items);
    }
    let generic = cat.curves("nodal-curves-generic")?;
    let basis = lemma_basis();
    let l20 = curves.lattice.restrict(&refs(&basis))?;
    let inv = l20.invariants();
    items.push(LatticeItem {
        name: "gram-20",
        reports: vec![Report::check(
            "twenty-curve Gram: rank 20, det -4",
            &inv,
            "rank 20, det -4",
            inv.rank == 20 && inv.determinant == BigInt::from(-4),
        )],
    });
    items.push(LatticeItem { name: "complement", reports: complement_reports(&l20) });
    items.push(LatticeItem { name: "chains-complement", reports: chains_complement_reports(&l20) });
    items.push(LatticeItem { name: "specialization", reports: specialization_reports(generic, curves, &l20) });
    items.push(LatticeItem { name: "transcendental", reports: transcendental_reports(&l20) });
    let g = Graph::from_gram(&curves.lattice);
    items.push(LatticeItem { name: "five-fold", reports: vec![five_fold_report(&g)] });
    items.push(LatticeItem { name: "e8-swap", reports: vec![swap_report(&g, curves)] });
    Ok(items)
}

fn configuration_reports(c: &Configuration, curves: &NodalCurveSet, special: bool) -> Vec<Report> {
    let (doubles, triples, n) = if special { (3, 4, 25) } else { (6, 3, 24) };
    let g = &curves.lattice.gram;
    let diag_ok = (0..curves.len()).all(|i| g[i][i] == -2);
    let off_ok = (0..curves.len()).all(|i| (0..curves.len()).all(|j| i == j || g[i][j] == 0 || g[i][j] == 1));
    vec![
        Report::equal("double points", &c.count_by_multiplicity(2), &doubles),
        Report::equal("triple points", &c.count_by_multiplicity(3), &triples),
        Report::equal("nodal curves", &curves.len(), &n),
        Report::check("every curve has self-intersection -2", diag_ok, true, diag_ok),
        Report::check("off-diagonal entries in {0, 1}", off_ok, true, off_ok),
    ]
}

fn chain_reports(curves: &NodalCurveSet) -> Vec<Report> {
    let mut out = Vec::new();
    let chains = e8_chains();
    for (k, chain) in chains.iter().enumerate() {
        let claim = format!("chain {}: even, negative definite, det 1, 240 roots", k + 1);
        let run = || -> Result<Report> {
            let l = curves.lattice.restrict(&refs(chain))?;
            let inv = l.invariants();
            let roots = enumerate_roots(&l)?;
            let ok = inv.rank == 8
                && inv.is_even
                && inv.definiteness == Definiteness::Negative
                && inv.determinant == BigInt::from(1)
                && roots == 240;
            Ok(Report::check(claim.clone(), format!("{inv}, {roots} roots"), "rank 8, det 1, 240 roots", ok))
        };
        out.push(run().unwrap_or_else(|e| failed(&claim, e)));
    }
    let disjoint = || -> Result<bool> {
        for a in &chains[0] {
            for b in &chains[1] {
                if curves.lattice.gram[curves.index_of(a)?][curves.index_of(b)?] != 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    };
    out.push(match disjoint() {
        Ok(ok) => Report::check("the chains are orthogonal", ok, true, ok),
        Err(e) => failed("the chains are orthogonal", e),
    });
    out
}

fn e111_vector(l20: &GramLattice) -> Vec<i64> {
    let mut v = vec![0; l20.dim()];
    v[l20.index_of("E111").expect("E111 in basis")] = 1;
    v
}

fn complement_reports(l20: &GramLattice) -> Vec<Report> {
    let comp = orthogonal_complement(l20, &[e111_vector(l20)]);
    let inv = comp.invariants();
    let ok = inv.rank == 19 && inv.determinant.abs() == BigInt::from(8) && inv.signature == (1, 18) && inv.is_even;
    vec![
        Report::check("E111-complement: rank 19, |det| 8, signature (1,18), even", &inv, "rank 19, |det| 8, signature (1,18), even", ok),
        {
            let mut r = disc_form_opposite_check(&comp, &GramLattice::diagonal(&[2, 2, -2]));
            r.claim = "E111-complement discriminant form is opposite to diag(2,2,-2)".into();
            r
        },
    ]
}

fn chain_vectors(l20: &GramLattice) -> Vec<Vec<i64>> {
    e8_chains()
        .iter()
        .flatten()
        .map(|c| {
            let mut v = vec![0; l20.dim()];
            v[l20.index_of(c).expect("chain curve in basis")] = 1;
            v
        })
        .collect()
}

fn chains_complement_reports(l20: &GramLattice) -> Vec<Report> {
    let comp = orthogonal_complement(l20, &chain_vectors(l20));
    let inv = comp.invariants();
    vec![Report::check("complement of both chains has rank 4", &inv, "rank 4", inv.rank == 4)]
}

/// Checks the explicit specialization map: it preserves the pairing, lands
/// in the complement of `E111`, and has image equal to that complement.
fn specialization_reports(generic: &NodalCurveSet, special: &NodalCurveSet, l20: &GramLattice) -> Vec<Report> {
    let claim = "specialization is an isometric embedding onto the E111-complement";
    let run = || -> Result<Vec<Report>> {
        let images = specialization_images(generic, special)?;
        let pulled = pullback_gram(&special.lattice, &images);
        let iso = pulled == generic.lattice.gram;
        let e111 = special.index_of("E111")?;
        let perp = images.iter().all(|v| (0..special.len()).map(|j| v[j] * special.lattice.gram[j][e111]).sum::<i64>() == 0);
        // all 25 curves span the same lattice as the twenty-curve basis
        let full = special.lattice.nondegenerate_quotient().invariants();
        let span_ok = full.rank == 20 && full.determinant.abs() == l20.determinant().abs();
        let image = special.lattice.sublattice(&images, "g").nondegenerate_quotient().invariants();
        let target = orthogonal_complement(l20, &[e111_vector(l20)]).invariants();
        let onto = image.rank == target.rank && image.determinant.abs() == target.determinant.abs();
        Ok(vec![
            Report::check("pairings are preserved", iso, true, iso),
            Report::check("images are orthogonal to E111", perp, true, perp),
            Report::check("25 curves span the twenty-curve lattice", &full, "rank 20, |det| 4", span_ok),
            Report::check(claim, &image, &target, onto && iso && perp),
        ])
    };
    run().unwrap_or_else(|e| vec![failed(claim, e)])
}

fn transcendental_reports(l20: &GramLattice) -> Vec<Report> {
    let claim = "transcendental lattice at t = -1 is diag(2,2)";
    let run = || -> Result<Report> {
        let cands = transcendental_candidates(l20)?;
        let target = GramLattice::diagonal(&[2, 2]);
        if cands.len() != 1 {
            let shown: Vec<String> = cands.iter().map(|c| format!("{:?}", c.gram)).collect();
            return Ok(Report::check(claim, format!("candidates {}", shown.join(", ")), "exactly one candidate", false));
        }
        let mut r = definite_isometry_small(&cands[0], &target)?;
        r.claim = claim.into();
        Ok(r)
    };
    vec![run().unwrap_or_else(|e| failed(claim, e))]
}

fn five_fold_report(g: &Graph) -> Report {
    let found = g.search(|p| graph::order(p) == 5);
    let computed = match &found {
        Some(p) => format!("order-5 automorphism {p:?}"),
        None => "none".into(),
    };
    Report::check("the 25-vertex graph has an order-5 automorphism", computed, "exists", found.is_some())
}

fn swap_report(g: &Graph, curves: &NodalCurveSet) -> Report {
    let claim = "an involution of the graph exchanges the two chains";
    let [c1, c2] = e8_chains();
    let idx = |c: &[String]| c.iter().map(|l| curves.index_of(l)).collect::<Result<Vec<_>>>();
    match (idx(&c1), idx(&c2)) {
        (Ok(a), Ok(b)) => {
            let found = g.search(|p| graph::order(p) == 2 && graph::swaps(p, &a, &b));
            let computed = if found.is_some() { "found" } else { "none" };
            Report::check(claim, computed, "found", found.is_some())
        }
        (Err(e), _) | (_, Err(e)) => failed(claim, e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_catalog;

    fn suite(mode: &str) -> Vec<LatticeItem> {
        let cat = build_catalog(&Mode::parse(mode).unwrap()).unwrap();
        lattice_suite(&cat).unwrap()
    }

    #[test]
    fn generic_suite_passes() {
        for item in suite("generic") {
            for r in &item.reports {
                assert!(r.is_pass(), "{}: {r}", item.name);
            }
        }
    }

    #[test]
    fn special_suite_passes() {
        let items = suite("-1");
        assert!(items.iter().any(|i| i.name == "five-fold"));
        for item in items {
            for r in &item.reports {
                assert!(r.is_pass(), "{}: {r}", item.name);
            }
        }
    }
}
