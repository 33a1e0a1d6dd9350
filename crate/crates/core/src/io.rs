//! Text and JSON encodings. Every format uses 1-based vertex indices;
//! conversion to the 0-based library indices happens here.
//!
//! Text formats allow `#` comment lines anywhere. Parsers that accept
//! both encodings pick JSON when the first non-blank character is `{`.

use crate::companion::{Ambient, Companion, CompanionBasis, CycleCheck, Inertia};
use crate::error::{Error, Result};
use crate::mutclass::{Finiteness, MutationClassReport};
use crate::quiver::Quiver;
use crate::surface::{SurfaceSpec, Triangulation};
use crate::weyl::RelationReport;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn json_error(e: serde_json::Error) -> Error {
    parse_error(e.line(), e.column(), e.to_string())
}

fn from_json<'a, T: Deserialize<'a>>(input: &'a str) -> Result<T> {
    serde_json::from_str(input).map_err(json_error)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn looks_like_json(input: &str) -> bool {
    input.trim_start().starts_with('{')
}

// Integer tokens of the non-comment lines, with 1-based positions.
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

impl Token<'_> {
    fn int<T: std::str::FromStr>(&self, what: &str) -> Result<T> {
        self.text
            .parse()
            .map_err(|_| parse_error(self.line, self.column, format!("expected {what}, found {:?}", self.text)))
    }
}

fn content_lines(input: &str) -> impl Iterator<Item = (usize, Vec<Token<'_>>)> {
    input.lines().enumerate().filter_map(|(idx, line)| {
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return None;
        }
        let mut tokens = Vec::new();
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let len = rest[start..].find(char::is_whitespace).unwrap_or(rest.len() - start);
            tokens.push(Token {
                text: &rest[start..start + len],
                line: idx + 1,
                column: offset + start + 1,
            });
            offset += start + len;
            rest = &rest[start + len..];
        }
        Some((idx + 1, tokens))
    })
}

fn header(lines: &[&str]) -> String {
    lines.iter().map(|l| format!("# {l}\n")).collect()
}

fn end_of_input(input: &str) -> (usize, usize) {
    let line = input.lines().count().max(1);
    let column = input.lines().last().map_or(0, str::len) + 1;
    (line, column)
}

// Reads the leading `n` line of a text format.
fn read_size<'a, I: Iterator<Item = (usize, Vec<Token<'a>>)>>(input: &str, lines: &mut I, format: &str) -> Result<usize> {
    let Some((line, tokens)) = lines.next() else {
        let (line, column) = end_of_input(input);
        return Err(parse_error(line, column, format!("empty {format} input, expected vertex count")));
    };
    if tokens.len() != 1 {
        return Err(parse_error(line, tokens[1].column, "expected a single vertex count"));
    }
    tokens[0].int("vertex count")
}

// ---------------------------------------------------------------- quivers

#[derive(Serialize, Deserialize)]
struct QuiverDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
    n: usize,
    arrows: Vec<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl QuiverDoc {
    fn from_quiver(q: &Quiver, source: Option<&str>) -> Self {
        Self {
            source: source.map(str::to_owned),
            n: q.n(),
            arrows: q
                .arrows()
                .into_iter()
                .map(|(i, j, w)| [i as i64 + 1, j as i64 + 1, w])
                .collect(),
            labels: q.labels().map(<[String]>::to_vec),
        }
    }

    fn into_quiver(self) -> Result<Quiver> {
        let mut arrows = Vec::with_capacity(self.arrows.len());
        let mut seen = std::collections::HashSet::new();
        for [i, j, w] in self.arrows {
            let vi = one_based(i, self.n)?;
            let vj = one_based(j, self.n)?;
            if !seen.insert((vi.min(vj), vi.max(vj))) {
                return Err(Error::DuplicateVertex(vi.max(vj)));
            }
            arrows.push((vi, vj, w));
        }
        let q = Quiver::from_arrows(self.n, &arrows)?;
        match self.labels {
            Some(labels) => q.with_labels(labels),
            None => Ok(q),
        }
    }
}

fn one_based(i: i64, n: usize) -> Result<usize> {
    if i < 1 || i as usize > n {
        return Err(Error::VertexOutOfRange {
            index: i.max(0) as usize,
            n,
        });
    }
    Ok(i as usize - 1)
}

/// Parses a quiver in QVR v1 text or its JSON mirror.
///
/// QVR v1 is the vertex count on the first content line followed by one
/// `i j b_ij` line per joined pair, meaning `b_ij` arrows from `i` to `j`.
pub fn parse_quiver(input: &str) -> Result<Quiver> {
    if looks_like_json(input) {
        return from_json::<QuiverDoc>(input)?.into_quiver();
    }
    let mut lines = content_lines(input);
    let n: usize = read_size(input, &mut lines, "QVR")?;
    let mut arrows = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line, tokens) in lines {
        if tokens.len() != 3 {
            let column = tokens.get(3).map_or(tokens.last().map_or(1, |t| t.column), |t| t.column);
            return Err(parse_error(line, column, "expected `i j b_ij`"));
        }
        let i: usize = tokens[0].int("vertex index")?;
        let j: usize = tokens[1].int("vertex index")?;
        let w: i64 = tokens[2].int("arrow weight")?;
        for (v, tok) in [(i, &tokens[0]), (j, &tokens[1])] {
            if v < 1 || v > n {
                return Err(parse_error(line, tok.column, format!("vertex {v} outside 1..={n}")));
            }
        }
        if i == j {
            return Err(parse_error(line, tokens[1].column, "loops are not allowed"));
        }
        if !seen.insert((i.min(j), i.max(j))) {
            return Err(parse_error(line, tokens[0].column, format!("pair ({i}, {j}) given twice")));
        }
        if w == 0 {
            return Err(parse_error(line, tokens[2].column, "zero weight"));
        }
        arrows.push((i - 1, j - 1, w));
    }
    Quiver::from_arrows(n, &arrows)
}

/// QVR v1 text, with `header` lines emitted as comments.
pub fn quiver_to_qvr(q: &Quiver, header_lines: &[&str]) -> String {
    let mut out = header(header_lines);
    out.push_str(&format!("{}\n", q.n()));
    for (i, j, w) in q.arrows() {
        out.push_str(&format!("{} {} {}\n", i + 1, j + 1, w));
    }
    out
}

pub fn quiver_to_json(q: &Quiver, source: Option<&str>) -> String {
    to_json(&QuiverDoc::from_quiver(q, source))
}

// ------------------------------------------------------------- companions

#[derive(Serialize, Deserialize)]
struct CompanionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
    n: usize,
    /// Row `i` holds entries `0..=i` of the lower triangle.
    lower: Vec<Vec<i64>>,
}

fn lower_triangle(a: &Companion) -> Vec<Vec<i64>> {
    (0..a.n()).map(|i| (0..=i).map(|j| a.get(i, j)).collect()).collect()
}

fn from_lower(n: usize, lower: &[Vec<i64>]) -> Result<Companion> {
    let mut rows = vec![vec![0; n]; n];
    for (i, row) in lower.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            rows[i][j] = x;
            rows[j][i] = x;
        }
    }
    Companion::from_matrix(&rows)
}

/// Parses a companion in QCC v1 text (vertex count, then the lower
/// triangle including the diagonal, one row per line) or its JSON mirror.
pub fn parse_companion(input: &str) -> Result<Companion> {
    if looks_like_json(input) {
        let doc: CompanionDoc = from_json(input)?;
        if doc.lower.len() != doc.n {
            return Err(Error::DimensionMismatch {
                left: doc.lower.len(),
                right: doc.n,
            });
        }
        for (row, entries) in doc.lower.iter().enumerate() {
            if entries.len() != row + 1 {
                return Err(Error::NotSquare {
                    row,
                    len: entries.len(),
                    n: row + 1,
                });
            }
        }
        return from_lower(doc.n, &doc.lower);
    }
    let mut lines = content_lines(input);
    let n: usize = read_size(input, &mut lines, "QCC")?;
    let mut lower = Vec::with_capacity(n);
    for (line, tokens) in lines.by_ref() {
        let i = lower.len();
        if i == n {
            return Err(parse_error(line, tokens[0].column, format!("more than {n} rows")));
        }
        if tokens.len() != i + 1 {
            let column = tokens.get(i + 1).map_or(tokens.last().unwrap().column, |t| t.column);
            return Err(parse_error(
                line,
                column,
                format!("row {} must have {} entries, found {}", i + 1, i + 1, tokens.len()),
            ));
        }
        let row = tokens
            .iter()
            .map(|t| t.int::<i64>("integer entry"))
            .collect::<Result<Vec<_>>>()?;
        if row[i] != 2 {
            return Err(parse_error(line, tokens[i].column, format!("diagonal entry is {}, expected 2", row[i])));
        }
        lower.push(row);
    }
    if lower.len() != n {
        let (line, column) = end_of_input(input);
        return Err(parse_error(line, column, format!("expected {n} rows, found {}", lower.len())));
    }
    from_lower(n, &lower)
}

pub fn companion_to_qcc(a: &Companion, header_lines: &[&str]) -> String {
    let mut out = header(header_lines);
    out.push_str(&format!("{}\n", a.n()));
    for row in lower_triangle(a) {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn companion_to_json(a: &Companion, source: Option<&str>) -> String {
    to_json(&CompanionDoc {
        source: source.map(str::to_owned),
        n: a.n(),
        lower: lower_triangle(a),
    })
}

// ----------------------------------------------------------------- bases

// Exact rational written as "p/q" or "p"; integers are also accepted.
struct Coordinate(BigRational);

impl Serialize for Coordinate {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Coordinate {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct Visitor;

        impl serde::de::Visitor<'_> for Visitor {
            type Value = Coordinate;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a rational number such as \"-3/2\" or an integer")
            }

            fn visit_i64<E: serde::de::Error>(self, v: i64) -> std::result::Result<Coordinate, E> {
                Ok(Coordinate(crate::companion::rat(v)))
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<Coordinate, E> {
                i64::try_from(v)
                    .map(|v| Coordinate(crate::companion::rat(v)))
                    .map_err(|_| E::custom("integer coordinate too large"))
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<Coordinate, E> {
                v.trim()
                    .parse::<BigRational>()
                    .map(Coordinate)
                    .map_err(|_| E::custom(format!("{v:?} is not a rational number")))
            }
        }

        deserializer.deserialize_any(Visitor)
    }
}

#[derive(Serialize, Deserialize)]
struct BasisDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
    t: usize,
    s: usize,
    vectors: Vec<Vec<Coordinate>>,
}

/// Parses basis JSON `{t, s, vectors}` with coordinates over
/// `e_1..e_t, d_1..d_s, d*_1..d*_s` given as `"p/q"` strings or integers.
pub fn parse_basis(input: &str) -> Result<CompanionBasis> {
    let doc: BasisDoc = from_json(input)?;
    let vectors = doc
        .vectors
        .into_iter()
        .map(|v| v.into_iter().map(|c| c.0).collect())
        .collect();
    CompanionBasis::new(Ambient::new(doc.t, doc.s), vectors)
}

pub fn basis_to_json(b: &CompanionBasis, source: Option<&str>) -> String {
    let amb = b.ambient();
    to_json(&BasisDoc {
        source: source.map(str::to_owned),
        t: amb.t,
        s: amb.s,
        vectors: b
            .vectors()
            .iter()
            .map(|v| v.iter().map(|x| Coordinate(x.clone())).collect())
            .collect(),
    })
}

// -------------------------------------------------------------- surfaces

#[derive(Serialize, Deserialize)]
struct TriangulationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
    triangles: Vec<[[usize; 2]; 3]>,
    gluing: Vec<[[usize; 2]; 2]>,
}

/// Parses triangulation JSON. Triangle `t` lists its slots `[t, 0..2]`;
/// each gluing entry pairs two slots and defines one arc, in order.
pub fn parse_triangulation(input: &str) -> Result<Triangulation> {
    let doc: TriangulationDoc = from_json(input)?;
    for (t, slots) in doc.triangles.iter().enumerate() {
        for (s, slot) in slots.iter().enumerate() {
            if *slot != [t, s] {
                return Err(Error::InvalidTriangulation(format!(
                    "triangle {t} lists slot {slot:?}, expected {:?}",
                    [t, s]
                )));
            }
        }
    }
    let gluing = doc
        .gluing
        .iter()
        .map(|[a, b]| ((a[0], a[1]), (b[0], b[1])))
        .collect();
    Triangulation::new(doc.triangles.len(), gluing)
}

pub fn triangulation_to_json(t: &Triangulation, source: Option<&str>) -> String {
    to_json(&TriangulationDoc {
        source: source.map(str::to_owned),
        triangles: (0..t.triangle_count()).map(|i| [[i, 0], [i, 1], [i, 2]]).collect(),
        gluing: t.gluing().iter().map(|&(a, b)| [[a.0, a.1], [b.0, b.1]]).collect(),
    })
}

#[derive(Serialize, Deserialize)]
struct SurfaceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
    g: usize,
    k: Vec<usize>,
}

pub fn parse_surface_spec(input: &str) -> Result<SurfaceSpec> {
    let doc: SurfaceDoc = from_json(input)?;
    SurfaceSpec::new(doc.g, doc.k)
}

pub fn surface_spec_to_json(spec: &SurfaceSpec, source: Option<&str>) -> String {
    to_json(&SurfaceDoc {
        source: source.map(str::to_owned),
        g: spec.g,
        k: spec.k.clone(),
    })
}

// --------------------------------------------------------------- reports

fn shift(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

#[derive(Serialize)]
struct CycleDoc {
    vertices: Vec<usize>,
    oriented: bool,
    product_sign: i64,
}

impl From<&CycleCheck> for CycleDoc {
    fn from(c: &CycleCheck) -> Self {
        Self {
            vertices: shift(&c.vertices),
            oriented: c.oriented,
            product_sign: c.product_sign,
        }
    }
}

#[derive(Serialize)]
struct CertificateDoc {
    member: usize,
    path: Vec<usize>,
    companion: Vec<Vec<i64>>,
    inertia: Inertia,
    fully_compatible: bool,
    admissible: bool,
}

#[derive(Serialize)]
struct FailureDoc {
    k: usize,
    mismatches: Vec<[usize; 2]>,
    cycle_failures: Vec<CycleDoc>,
}

#[derive(Serialize)]
struct ViolationDoc {
    path: Vec<usize>,
    quiver: QuiverDoc,
    companion: Vec<Vec<i64>>,
    failures: Vec<FailureDoc>,
}

#[derive(Serialize)]
struct ClassDoc {
    quotient: &'static str,
    finite: bool,
    certified: bool,
    members: Vec<QuiverDoc>,
    edges: Vec<[usize; 3]>,
    witness: Option<Vec<usize>>,
    certificates: Vec<CertificateDoc>,
    violation: Option<ViolationDoc>,
}

/// Class or certification report. Member numbers, vertices and mutation
/// paths are all 1-based.
pub fn class_report_to_json(r: &MutationClassReport) -> String {
    to_json(&ClassDoc {
        quotient: r.quotient,
        finite: r.finite,
        certified: r.certified(),
        members: r.members.iter().map(|q| QuiverDoc::from_quiver(q, None)).collect(),
        edges: r.edges.iter().map(|&(m, k, m2)| [m + 1, k + 1, m2 + 1]).collect(),
        witness: r.witness.as_deref().map(shift),
        certificates: r
            .certificates
            .iter()
            .map(|c| CertificateDoc {
                member: c.member + 1,
                path: shift(&c.path),
                companion: lower_triangle(&c.companion),
                inertia: c.inertia,
                fully_compatible: c.fully_compatible,
                admissible: c.admissible,
            })
            .collect(),
        violation: r.violation.as_ref().map(|v| ViolationDoc {
            path: shift(&v.path),
            quiver: QuiverDoc::from_quiver(&v.quiver, None),
            companion: lower_triangle(&v.companion),
            failures: v
                .failures
                .iter()
                .map(|f| FailureDoc {
                    k: f.k + 1,
                    mismatches: f.mismatches.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
                    cycle_failures: f.cycle_failures.iter().map(CycleDoc::from).collect(),
                })
                .collect(),
        }),
    })
}

#[derive(Serialize)]
struct FinitenessDoc {
    finite: bool,
    witness: Option<Vec<usize>>,
    class_size: Option<usize>,
}

pub fn finiteness_to_json(f: &Finiteness) -> String {
    to_json(&FinitenessDoc {
        finite: f.finite,
        witness: f.witness.as_deref().map(shift),
        class_size: f.class_size,
    })
}

#[derive(Serialize)]
struct InstanceDoc<'a> {
    pattern: &'a str,
    vertices: Vec<usize>,
    relator: Vec<usize>,
    holds: bool,
}

#[derive(Serialize)]
struct RelationDoc<'a> {
    instances: Vec<InstanceDoc<'a>>,
    pass: bool,
}

pub fn relation_report_to_json(r: &RelationReport) -> String {
    to_json(&RelationDoc {
        instances: r
            .instances
            .iter()
            .map(|i| InstanceDoc {
                pattern: &i.instance.pattern,
                vertices: shift(&i.instance.vertices),
                relator: shift(&i.instance.relator),
                holds: i.holds,
            })
            .collect(),
        pass: r.pass,
    })
}

/// Serializes any report-like value with the crate's JSON conventions.
pub fn value_to_json<T: Serialize>(value: &T) -> String {
    to_json(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Quiver {
        Quiver::from_arrows(3, &[(0, 1, -1), (1, 2, -1), (0, 2, 1)]).unwrap()
    }

    #[test]
    fn qvr_round_trip() {
        let q = triangle();
        let text = quiver_to_qvr(&q, &["a comment"]);
        assert_eq!(text, "# a comment\n3\n1 2 -1\n1 3 1\n2 3 -1\n");
        assert_eq!(parse_quiver(&text).unwrap(), q);
    }

    #[test]
    fn quiver_json_round_trip_keeps_labels() {
        let q = triangle().with_labels(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        let text = quiver_to_json(&q, Some("demo"));
        assert_eq!(parse_quiver(&text).unwrap(), q);
    }

    #[test]
    fn qvr_errors_carry_positions() {
        let err = parse_quiver("# header\n3\n1 2 x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 5,
                message: "expected arrow weight, found \"x\"".into()
            }
        );
        assert!(matches!(parse_quiver("2\n1 3 1\n"), Err(Error::Parse { line: 2, column: 3, .. })));
        assert!(matches!(parse_quiver("3\n1 2 1\n2 1 1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_quiver(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_quiver("{\"n\": 2,\n \"arrows\": [1]}"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn qcc_round_trip() {
        let a = Companion::all_negative(&triangle());
        let text = companion_to_qcc(&a, &[]);
        assert_eq!(text, "3\n2\n-1 2\n-1 -1 2\n");
        assert_eq!(parse_companion(&text).unwrap(), a);
        assert_eq!(parse_companion(&companion_to_json(&a, None)).unwrap(), a);
    }

    #[test]
    fn qcc_rejects_short_rows_and_bad_diagonal() {
        assert!(matches!(parse_companion("2\n2\n-1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_companion("2\n2\n-1 3\n"), Err(Error::Parse { line: 3, column: 4, .. })));
        assert!(matches!(parse_companion("2\n2\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn basis_round_trip_with_fractions() {
        let half = "1/2".parse::<BigRational>().unwrap();
        let b = CompanionBasis::new(
            Ambient::new(2, 1),
            vec![vec![crate::companion::rat(1), crate::companion::rat(-1), half.clone(), crate::companion::rat(0)]],
        )
        .unwrap();
        let text = basis_to_json(&b, None);
        assert!(text.contains("\"1/2\""));
        assert_eq!(parse_basis(&text).unwrap(), b);
        let ints = parse_basis("{\"t\": 2, \"s\": 0, \"vectors\": [[1, -1]]}").unwrap();
        assert_eq!(ints.gram().unwrap(), vec![vec![2]]);
        assert!(matches!(
            parse_basis("{\"t\": 2, \"s\": 0,\n \"vectors\": [[\"1/0\", 1]]}"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn triangulation_and_spec_round_trip() {
        let spec = SurfaceSpec::new(0, vec![2, 1]).unwrap();
        assert_eq!(parse_surface_spec(&surface_spec_to_json(&spec, None)).unwrap(), spec);
        let t = crate::surface::build_triangulation(&spec).unwrap();
        assert_eq!(parse_triangulation(&triangulation_to_json(&t, Some("x"))).unwrap(), t);
    }
}
