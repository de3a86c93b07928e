//! Named configurations with known embedding counts and reference solutions.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::embedding::{canonical_form, ConfigurationSpec, EmbeddingSolution};
use crate::io::{spec_to_file, MatrixSpecFile};
use crate::lattice::HomologyClass;

/// Builder for a configuration: the line is component 0.
struct Builder {
    selfs: Vec<i64>,
    contacts: Vec<(usize, usize, i64)>,
    labels: Vec<String>,
}

impl Builder {
    fn new() -> Self {
        Builder { selfs: vec![1], contacts: Vec::new(), labels: vec!["C".into()] }
    }

    fn add(&mut self, label: &str, s: i64, meets: &[(usize, i64)]) -> usize {
        let i = self.selfs.len();
        self.selfs.push(s);
        self.labels.push(label.into());
        for &(j, m) in meets {
            self.contacts.push((i, j, m));
        }
        i
    }

    /// Chain of `len` spheres hanging off `from`: a −1 first, then −2s.
    /// When `from` is the line, this is the chain of extra blow-ups.
    fn tail(&mut self, from: usize, len: usize, first_self: i64, prefix: &str) {
        let mut prev = from;
        for k in 0..len {
            let s = if k == 0 { first_self } else { -2 };
            prev = self.add(&format!("{prefix}{}", k + 1), s, &[(prev, 1)]);
        }
    }

    fn build(self) -> ConfigurationSpec {
        let spec = ConfigurationSpec::from_contacts(&self.selfs, &self.contacts, 0).expect("registry spec is valid");
        ConfigurationSpec::with_labels(spec.t().to_vec(), 0, self.labels).expect("labels match")
    }
}

/// +1 line tangent to order 3 to a −1 sphere, which carries a chain of six −2s.
pub fn e3_spec() -> ConfigurationSpec {
    let mut b = Builder::new();
    let e = b.add("E", -1, &[(0, 3)]);
    b.tail(e, 6, -2, "A");
    b.build()
}

/// +1 line meeting a −4 sphere with multiplicity 3 and a −1 sphere once; the
/// −1 sphere meets the −4 once and carries two −2s, the −4 carries six −2s.
pub fn e6_spec() -> ConfigurationSpec {
    let mut b = Builder::new();
    let four = b.add("S4", -4, &[(0, 3)]);
    let one = b.add("S1", -1, &[(0, 1), (four, 1)]);
    b.tail(four, 6, -2, "A");
    b.tail(one, 2, -2, "B");
    b.build()
}

fn chain_len(s: i64, offset: i64) -> Option<usize> {
    usize::try_from(s - offset).ok()
}

/// One (2,3) cusp, degree 3: line h plus E (−1, tangent to order 2) and the
/// chain of s − 5 extra blow-ups.
pub fn genus1_spec(s: i64) -> Option<ConfigurationSpec> {
    let len = chain_len(s, 5)?;
    let mut b = Builder::new();
    b.add("E", -1, &[(0, 2)]);
    b.tail(0, len, -1, "F");
    Some(b.build())
}

/// Two (2,3) cusps.
pub fn genus2_two_cusps_spec(s: i64) -> Option<ConfigurationSpec> {
    let len = chain_len(s, 9)?;
    let mut b = Builder::new();
    b.add("E1", -1, &[(0, 2)]);
    b.add("E2", -1, &[(0, 2)]);
    b.tail(0, len, -1, "F");
    Some(b.build())
}

/// One (2,5) cusp.
pub fn genus2_25_spec(s: i64) -> Option<ConfigurationSpec> {
    let len = chain_len(s, 9)?;
    let mut b = Builder::new();
    let e = b.add("E", -1, &[(0, 2)]);
    b.add("E'", -2, &[(e, 1)]);
    b.tail(0, len, -1, "F");
    Some(b.build())
}

/// One (3,4) cusp.
pub fn genus3_34_spec(s: i64) -> Option<ConfigurationSpec> {
    let len = chain_len(s, 10)?;
    let mut b = Builder::new();
    b.add("E", -1, &[(0, 3)]);
    b.tail(0, len, -1, "F");
    Some(b.build())
}

/// One (2,7) cusp.
pub fn genus3_27_spec(s: i64) -> Option<ConfigurationSpec> {
    let len = chain_len(s, 13)?;
    let mut b = Builder::new();
    let e = b.add("E", -1, &[(0, 2)]);
    let e1 = b.add("E'", -2, &[(e, 1)]);
    b.add("E''", -2, &[(e1, 1)]);
    b.tail(0, len, -1, "F");
    Some(b.build())
}

/// A (2,3) and a (2,5) cusp.
pub fn genus3_23_25_spec(s: i64) -> Option<ConfigurationSpec> {
    let len = chain_len(s, 13)?;
    let mut b = Builder::new();
    b.add("E", -1, &[(0, 2)]);
    let e1 = b.add("E'", -1, &[(0, 2)]);
    b.add("E''", -2, &[(e1, 1)]);
    b.tail(0, len, -1, "F");
    Some(b.build())
}

/// Three (2,3) cusps.
pub fn genus3_triple_spec(s: i64) -> Option<ConfigurationSpec> {
    let len = chain_len(s, 13)?;
    let mut b = Builder::new();
    b.add("E", -1, &[(0, 2)]);
    b.add("E'", -1, &[(0, 2)]);
    b.add("E''", -1, &[(0, 2)]);
    b.tail(0, len, -1, "F");
    Some(b.build())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    E3,
    E6,
    Genus1,
    Genus2TwoCusps,
    Genus2Cusp25,
    Genus3Cusp34,
    Genus3Cusp27,
    Genus3Cusps23And25,
    Genus3TripleCusp,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::E3,
        Family::E6,
        Family::Genus1,
        Family::Genus2TwoCusps,
        Family::Genus2Cusp25,
        Family::Genus3Cusp34,
        Family::Genus3Cusp27,
        Family::Genus3Cusps23And25,
        Family::Genus3TripleCusp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::E3 => "e3",
            Family::E6 => "e6",
            Family::Genus1 => "genus1",
            Family::Genus2TwoCusps => "genus2-two-cusps",
            Family::Genus2Cusp25 => "genus2-25",
            Family::Genus3Cusp34 => "genus3-34",
            Family::Genus3Cusp27 => "genus3-27",
            Family::Genus3Cusps23And25 => "genus3-23-25",
            Family::Genus3TripleCusp => "genus3-triple",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }

    /// Whether the family is indexed by the self-intersection s.
    pub fn takes_s(self) -> bool {
        !matches!(self, Family::E3 | Family::E6)
    }

    pub fn spec(self, s: Option<i64>) -> Option<ConfigurationSpec> {
        match (self, s) {
            (Family::E3, _) => Some(e3_spec()),
            (Family::E6, _) => Some(e6_spec()),
            (_, None) => None,
            (Family::Genus1, Some(s)) => genus1_spec(s),
            (Family::Genus2TwoCusps, Some(s)) => genus2_two_cusps_spec(s),
            (Family::Genus2Cusp25, Some(s)) => genus2_25_spec(s),
            (Family::Genus3Cusp34, Some(s)) => genus3_34_spec(s),
            (Family::Genus3Cusp27, Some(s)) => genus3_27_spec(s),
            (Family::Genus3Cusps23And25, Some(s)) => genus3_23_25_spec(s),
            (Family::Genus3TripleCusp, Some(s)) => genus3_triple_spec(s),
        }
    }

    /// Expected (s, count) table; s is `None` for the fixed configurations.
    pub fn expected_counts(self) -> Vec<(Option<i64>, usize)> {
        let table = |s0: i64, counts: &[usize]| -> Vec<(Option<i64>, usize)> {
            counts.iter().enumerate().map(|(k, &c)| (Some(s0 + k as i64), c)).collect()
        };
        match self {
            Family::E3 => vec![(None, 3)],
            Family::E6 => vec![(None, 6)],
            Family::Genus1 => table(5, &[1, 1, 1, 2, 1, 0]),
            Family::Genus2TwoCusps | Family::Genus2Cusp25 => table(9, &[1, 1, 1, 2, 0]),
            Family::Genus3Cusp34 => table(10, &[1, 1, 1, 1, 1, 1, 1, 0]),
            Family::Genus3Cusp27 | Family::Genus3Cusps23And25 => table(13, &[2, 2, 2, 3, 0]),
            Family::Genus3TripleCusp => table(13, &[2, 2, 2, 3, 0]),
        }
    }
}

/// A reference solution with a name and whether it is known to be realized
/// by an actual symplectic configuration (not just homologically).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedSolution {
    pub name: String,
    pub classes: Vec<String>,
    pub realized: Option<bool>,
}

impl NamedSolution {
    /// The solution with the labels as listed.
    pub fn listed(&self) -> EmbeddingSolution {
        let classes = self.classes.iter().map(|c| c.parse::<HomologyClass>().expect("registry class")).collect();
        EmbeddingSolution::new(classes)
    }

    pub fn solution(&self) -> EmbeddingSolution {
        canonical_form(&self.listed())
    }
}

fn chain(pairs: &[(usize, usize)]) -> Vec<String> {
    pairs.iter().map(|&(a, b)| format!("e{a}-e{b}")).collect()
}

fn join(head: &[&str], rest: Vec<String>) -> Vec<String> {
    head.iter().map(|s| s.to_string()).chain(rest).collect()
}

/// The three embeddings of the E3 configuration (component order of `e3_spec`).
pub fn e3_solutions() -> Vec<NamedSolution> {
    let e = "3h-2e0-e1-e2-e3-e4-e5-e6";
    let v6 = chain(&[(1, 7), (7, 8), (8, 9), (9, 10), (10, 11), (11, 12)]);
    let v1 = chain(&[(1, 7), (2, 1), (3, 2), (4, 3), (5, 4), (6, 5)]);
    let v0 = chain(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]);
    [("V6", v6), ("V1", v1), ("V0", v0)]
        .into_iter()
        .map(|(name, c)| NamedSolution { name: name.into(), classes: join(&["h", e], c), realized: Some(true) })
        .collect()
}

/// The six embeddings of the E6 configuration (component order of `e6_spec`:
/// line, −4, −1, six −2s off the −4, two −2s off the −1).
pub fn e6_solutions() -> Vec<NamedSolution> {
    let four = "3h-2e0-e1-e2-e3-e4-e5-e6-e7-e8-e9";
    let long_a = chain(&[(1, 10), (10, 11), (11, 12), (12, 13), (13, 14), (14, 15)]);
    let long_b = chain(&[(1, 10), (2, 1), (3, 2), (4, 3), (5, 4), (6, 5)]);
    let long_c = chain(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]);
    let build = |name: &'static str, top: [&str; 3], long: &Vec<String>| {
        let mut classes = vec!["h".to_string(), four.to_string(), top[0].to_string()];
        classes.extend(long.iter().cloned());
        classes.push(top[1].to_string());
        classes.push(top[2].to_string());
        NamedSolution { name: name.into(), classes, realized: Some(true) }
    };
    vec![
        build("W9", ["h-e0-e16", "e16-e17", "e17-e18"], &long_a),
        build("W6", ["h-e8-e9", "e8-e7", "e9-e8"], &long_a),
        build("Z6", ["h-e8-e9", "e8-e7", "e7-e6"], &long_a),
        build("W4", ["h-e0-e11", "e11-e12", "e12-e13"], &long_b),
        build("W1", ["h-e8-e9", "e8-e7", "e9-e8"], &long_b),
        build("W0", ["h-e8-e9", "e8-e7", "e9-e8"], &long_c),
    ]
}

/// For three (2,3) cusps: the three conic classes 2h − Σ5 eᵢ pairwise share
/// four indices. Either all three share the same four (not realized by a curve
/// configuration) or only three indices are common to all (realized).
pub fn triple_cusp_realized(sol: &EmbeddingSolution) -> Option<bool> {
    let conics: Vec<&HomologyClass> = sol.classes.iter().filter(|c| c.a0 == 2).collect();
    if conics.len() != 3 {
        return None;
    }
    let common = conics[0].coeffs().keys().filter(|i| conics[1].coeff(**i) != 0 && conics[2].coeff(**i) != 0).count();
    Some(common == 3)
}

/// The three embeddings for three (2,3) cusps at s = 16, with realizability.
pub fn triple_cusp_solutions() -> Vec<NamedSolution> {
    let base = ["h", "2h-e0-e1-e2-e3-e4", "2h-e0-e1-e2-e3-e5"];
    let mk = |name: &str, rest: [&str; 4], realized| NamedSolution {
        name: name.into(),
        classes: base.iter().chain(rest.iter()).map(|s| s.to_string()).collect(),
        realized: Some(realized),
    };
    vec![
        mk("T1", ["2h-e0-e1-e2-e3-e6", "h-e0-e1", "e1-e2", "e0-e1"], false),
        mk("T2", ["2h-e0-e1-e2-e3-e6", "h-e0-e1", "e1-e2", "e2-e3"], false),
        mk("T3", ["2h-e0-e1-e2-e4-e5", "h-e0-e1", "e1-e2", "e0-e1"], true),
    ]
}

/// One configuration with its expected number of embeddings and any
/// reference solutions that must appear among them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegistryEntry {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    pub spec: MatrixSpecFile,
    pub expected_count: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub solutions: Vec<NamedSolution>,
}

/// Every registry configuration, built from the constructors above.
pub fn registry_entries() -> Vec<RegistryEntry> {
    let mut out = Vec::new();
    for f in Family::ALL {
        for (s, expected_count) in f.expected_counts() {
            let spec = f.spec(s).expect("registry family covers its table");
            let solutions = match (f, s) {
                (Family::E3, _) => e3_solutions(),
                (Family::E6, _) => e6_solutions(),
                (Family::Genus3TripleCusp, Some(16)) => triple_cusp_solutions(),
                _ => Vec::new(),
            };
            out.push(RegistryEntry {
                family: f.name().into(),
                s,
                spec: spec_to_file(&spec),
                expected_count,
                solutions,
            });
        }
    }
    out
}

/// The shipped registry data file.
pub const REGISTRY_JSON: &str = include_str!("../fixtures/registry.json");

pub fn load_registry() -> Result<Vec<RegistryEntry>, serde_json::Error> {
    serde_json::from_str(REGISTRY_JSON)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Replay one registry entry: count, reference solutions, realizability flags.
pub fn check_entry(entry: &RegistryEntry) -> FixtureResult {
    let name = match entry.s {
        Some(s) => format!("{} s={s}", entry.family),
        None => entry.family.clone(),
    };
    let fail = |detail: String| FixtureResult { name: name.clone(), pass: false, detail };
    let spec = match ConfigurationSpec::new(entry.spec.t.clone(), entry.spec.line) {
        Ok(s) => s,
        Err(e) => return fail(format!("bad spec: {e}")),
    };
    let sols = crate::embedding::enumerate_embeddings(&spec, spec.default_n_max());
    if sols.len() != entry.expected_count {
        return fail(format!("expected {} solutions, found {}", entry.expected_count, sols.len()));
    }
    for named in &entry.solutions {
        let listed = named.listed();
        if let Err(v) = crate::embedding::verify_solution(&spec, &listed) {
            return fail(format!("{} fails verification: {v}", named.name));
        }
        let canon = canonical_form(&listed);
        if !sols.contains(&canon) {
            return fail(format!("{} not found by the search", named.name));
        }
        if entry.family == Family::Genus3TripleCusp.name() && triple_cusp_realized(&canon) != named.realized {
            return fail(format!("{} realizability flag disagrees", named.name));
        }
    }
    let distinct: BTreeSet<EmbeddingSolution> = entry.solutions.iter().map(|n| n.solution()).collect();
    if distinct.len() != entry.solutions.len() {
        return fail("reference solutions are not pairwise inequivalent".into());
    }
    let detail = format!("{} solutions, n_used {:?}", sols.len(), sols.iter().map(|s| s.n_used).collect::<Vec<_>>());
    FixtureResult { name, pass: true, detail }
}

/// Replay the shipped registry and check it matches the constructors here.
pub fn run_fixtures() -> Vec<FixtureResult> {
    let mut out = Vec::new();
    match load_registry() {
        Ok(entries) => {
            let same = entries == registry_entries();
            out.push(FixtureResult {
                name: "registry data".into(),
                pass: same,
                detail: if same {
                    format!("{} entries", entries.len())
                } else {
                    "data file differs from constructors".into()
                },
            });
            out.extend(entries.iter().map(check_entry));
        }
        Err(e) => out.push(FixtureResult { name: "registry data".into(), pass: false, detail: e.to_string() }),
    }
    out
}
