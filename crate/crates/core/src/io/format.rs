//! Line-oriented text format.
//!
//! `#` starts a comment; blank lines are skipped. The first line names the
//! document: `base <kind>`, `moves`, or `word`.
//!
//! ```text
//! base disk
//! edge u=(1,0) len=3/2          # len optional
//! corner node e=(2,1) mult=1 t=1/2
//! edge u=(0,1)
//! corner vertex
//! ...                           # edges and corners alternate, cyclically
//!                               # closed: the corner after an edge is the
//!                               # corner between it and the next edge
//! base sphere nodes=24
//! base rp2 nodes=12
//! base cylinder lambda=1 blowups=2
//! base torus lambda=2 chern=(1,0)
//! moves
//! branch index=0 dir=forward before=<hex> after=<hex>
//! word
//! factor e=(0,1) mult=1
//! ```
//!
//! Rationals print reduced with positive denominator, integers without the
//! `/1`. The serializer always writes optional corner fields, so its output
//! round-trips byte-exactly.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::base::{Corner, DiskBase, Edge, FactorizationWord, NonDiskBase, Topology};
use crate::error::ParseError;
use crate::lattice::{LatticeVector, ParabolicMonodromy};
use crate::moves::{MoveDirection, MoveKind, MoveRecord, TradeDirection};

/// Any value the format can carry.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Disk(DiskBase),
    NonDisk(NonDiskBase),
    Moves(Vec<MoveRecord>),
    Word(FactorizationWord),
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// A content line with its 1-based position in the source.
struct Line<'a> {
    no: usize,
    tokens: Vec<&'a str>,
}

fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let stripped = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let tokens: Vec<&str> = stripped.split_whitespace().collect();
            if tokens.is_empty() {
                None
            } else {
                Some(Line { no: i + 1, tokens })
            }
        })
        .collect()
}

fn parse_bigint(s: &str, line: usize) -> Result<BigInt, ParseError> {
    s.parse::<BigInt>().map_err(|_| err(line, format!("expected an integer, found `{s}`")))
}

fn parse_i64(s: &str, line: usize) -> Result<i64, ParseError> {
    s.parse::<i64>().map_err(|_| err(line, format!("expected an integer, found `{s}`")))
}

fn parse_u64(s: &str, line: usize) -> Result<u64, ParseError> {
    s.parse::<u64>().map_err(|_| err(line, format!("expected a nonnegative integer, found `{s}`")))
}

fn parse_usize(s: &str, line: usize) -> Result<usize, ParseError> {
    s.parse::<usize>().map_err(|_| err(line, format!("expected an index, found `{s}`")))
}

fn parse_rational(s: &str, line: usize) -> Result<BigRational, ParseError> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p = parse_bigint(p, line)?;
            let q = parse_bigint(q, line)?;
            if !q.is_positive() {
                return Err(err(line, format!("denominator in `{s}` must be positive")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(parse_bigint(s, line)?)),
    }
}

fn parse_vector(s: &str, line: usize) -> Result<LatticeVector, ParseError> {
    let inner = s
        .strip_prefix('(')
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| err(line, format!("expected a vector `(x,y)`, found `{s}`")))?;
    let (x, y) = inner
        .split_once(',')
        .ok_or_else(|| err(line, format!("expected a vector `(x,y)`, found `{s}`")))?;
    Ok(LatticeVector::new(parse_bigint(x.trim(), line)?, parse_bigint(y.trim(), line)?))
}

fn parse_pair_i64(s: &str, line: usize) -> Result<(i64, i64), ParseError> {
    let v = parse_vector(s, line)?;
    let m = i64::try_from(&v.x).map_err(|_| err(line, "integer out of range"))?;
    let n = i64::try_from(&v.y).map_err(|_| err(line, "integer out of range"))?;
    Ok((m, n))
}

/// Split `key=value` fields, rejecting anything else.
fn fields<'a>(tokens: &[&'a str], line: usize) -> Result<Vec<(&'a str, &'a str)>, ParseError> {
    tokens
        .iter()
        .map(|t| {
            t.split_once('=').ok_or_else(|| err(line, format!("expected `key=value`, found `{t}`")))
        })
        .collect()
}

fn take<'a>(
    fields: &[(&'a str, &'a str)],
    key: &str,
    line: usize,
) -> Result<&'a str, ParseError> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| err(line, format!("missing `{key}=`")))
}

fn take_opt<'a>(fields: &[(&'a str, &'a str)], key: &str) -> Option<&'a str> {
    fields.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
}

fn check_keys(fields: &[(&str, &str)], allowed: &[&str], line: usize) -> Result<(), ParseError> {
    for (k, _) in fields {
        if !allowed.contains(k) {
            return Err(err(line, format!("unknown field `{k}`")));
        }
    }
    Ok(())
}

/// Parse any document.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let lines = content_lines(text);
    let Some(head) = lines.first() else {
        return Err(err(1, "empty document"));
    };
    match head.tokens[0] {
        "base" => parse_base(&lines),
        "moves" => Ok(Document::Moves(parse_moves(&lines)?)),
        "word" => Ok(Document::Word(parse_word(&lines)?)),
        other => Err(err(head.no, format!("expected `base`, `moves` or `word`, found `{other}`"))),
    }
}

fn parse_base(lines: &[Line<'_>]) -> Result<Document, ParseError> {
    let head = &lines[0];
    let kind = head
        .tokens
        .get(1)
        .ok_or_else(|| err(head.no, "missing base kind after `base`"))?;
    let rest = fields(&head.tokens[2..], head.no)?;
    match *kind {
        "disk" => {
            check_keys(&rest, &[], head.no)?;
            parse_disk(&lines[1..]).map(Document::Disk)
        }
        "sphere" | "rp2" => {
            check_keys(&rest, &["nodes"], head.no)?;
            let nodes = parse_u64(take(&rest, "nodes", head.no)?, head.no)?;
            ensure_only_line(lines, head.no)?;
            let topology = if *kind == "sphere" { Topology::Sphere } else { Topology::Rp2 };
            Ok(Document::NonDisk(NonDiskBase { topology, nodes, lambda: 0, chern: None }))
        }
        "cylinder" | "moebius" => {
            check_keys(&rest, &["lambda", "blowups"], head.no)?;
            let lambda = parse_i64(take(&rest, "lambda", head.no)?, head.no)?;
            let blowups = parse_u64(take(&rest, "blowups", head.no)?, head.no)?;
            ensure_only_line(lines, head.no)?;
            let topology =
                if *kind == "cylinder" { Topology::Cylinder } else { Topology::Moebius };
            Ok(Document::NonDisk(NonDiskBase { topology, nodes: blowups, lambda, chern: None }))
        }
        "torus" | "klein" => {
            check_keys(&rest, &["lambda", "chern"], head.no)?;
            let lambda = parse_i64(take(&rest, "lambda", head.no)?, head.no)?;
            let chern = parse_pair_i64(take(&rest, "chern", head.no)?, head.no)?;
            ensure_only_line(lines, head.no)?;
            let topology = if *kind == "torus" { Topology::Torus } else { Topology::KleinBottle };
            Ok(Document::NonDisk(NonDiskBase {
                topology,
                nodes: 0,
                lambda,
                chern: Some(chern),
            }))
        }
        other => Err(err(head.no, format!("unknown base kind `{other}`"))),
    }
}

fn ensure_only_line(lines: &[Line<'_>], _head: usize) -> Result<(), ParseError> {
    match lines.get(1) {
        Some(extra) => Err(err(extra.no, "unexpected content after base descriptor")),
        None => Ok(()),
    }
}

fn parse_disk(lines: &[Line<'_>]) -> Result<DiskBase, ParseError> {
    let mut edges: Vec<Edge> = Vec::new();
    let mut corner_lines: Vec<Corner> = Vec::new();
    let mut expect_edge = true;
    for line in lines {
        match (line.tokens[0], expect_edge) {
            ("edge", true) => {
                let f = fields(&line.tokens[1..], line.no)?;
                check_keys(&f, &["u", "len"], line.no)?;
                let normal = parse_vector(take(&f, "u", line.no)?, line.no)?;
                let length = match take_opt(&f, "len") {
                    Some(s) => Some(parse_rational(s, line.no)?),
                    None => None,
                };
                edges.push(Edge { normal, length });
                expect_edge = false;
            }
            ("corner", false) => {
                corner_lines.push(parse_corner(line)?);
                expect_edge = true;
            }
            ("edge", false) => return Err(err(line.no, "expected a `corner` line")),
            ("corner", true) => return Err(err(line.no, "expected an `edge` line")),
            (other, _) => {
                return Err(err(line.no, format!("expected `edge` or `corner`, found `{other}`")))
            }
        }
    }
    if !expect_edge {
        return Err(err(
            lines.last().map(|l| l.no).unwrap_or(1),
            "disk base ends mid-pair; each edge needs its following corner",
        ));
    }
    let k = edges.len();
    if k == 0 {
        return Err(err(1, "disk base has no edges"));
    }
    // the corner written after edge i separates edges i and i+1, so it is
    // corner i+1 in the cyclic indexing
    let mut corners = vec![Corner::Vertex; k];
    for (i, c) in corner_lines.into_iter().enumerate() {
        corners[(i + 1) % k] = c;
    }
    Ok(DiskBase { edges, corners })
}

fn parse_corner(line: &Line<'_>) -> Result<Corner, ParseError> {
    match line.tokens.get(1) {
        Some(&"vertex") => {
            if line.tokens.len() > 2 {
                return Err(err(line.no, "unexpected fields after `corner vertex`"));
            }
            Ok(Corner::Vertex)
        }
        Some(&"node") => {
            let f = fields(&line.tokens[2..], line.no)?;
            check_keys(&f, &["e", "mult", "t"], line.no)?;
            let eigen = parse_vector(take(&f, "e", line.no)?, line.no)?;
            if !eigen.is_primitive() {
                return Err(err(line.no, "eigenvector not primitive"));
            }
            let multiplicity = match take_opt(&f, "mult") {
                Some(s) => parse_u64(s, line.no)?,
                None => 1,
            };
            let slide = match take_opt(&f, "t") {
                Some(s) => parse_rational(s, line.no)?,
                None => crate::base::half(),
            };
            Ok(Corner::Node { eigen, multiplicity, slide })
        }
        _ => Err(err(line.no, "expected `corner vertex` or `corner node ...`")),
    }
}

fn parse_direction(s: &str, line: usize) -> Result<MoveDirection, ParseError> {
    match s {
        "forward" => Ok(MoveDirection::Forward),
        "backward" => Ok(MoveDirection::Backward),
        other => Err(err(line, format!("expected `forward` or `backward`, found `{other}`"))),
    }
}

fn parse_hash(s: &str, line: usize) -> Result<u64, ParseError> {
    u64::from_str_radix(s, 16).map_err(|_| err(line, format!("expected a hex hash, found `{s}`")))
}

fn parse_moves(lines: &[Line<'_>]) -> Result<Vec<MoveRecord>, ParseError> {
    if lines[0].tokens.len() > 1 {
        return Err(err(lines[0].no, "unexpected fields after `moves`"));
    }
    let mut out = Vec::new();
    for line in &lines[1..] {
        let f = fields(&line.tokens[1..], line.no)?;
        let kind = match line.tokens[0] {
            "branch" => MoveKind::Branch {
                index: parse_usize(take(&f, "index", line.no)?, line.no)?,
                direction: parse_direction(take(&f, "dir", line.no)?, line.no)?,
            },
            "trade" => MoveKind::Trade {
                index: parse_usize(take(&f, "index", line.no)?, line.no)?,
                direction: match take(&f, "dir", line.no)? {
                    "vertex-to-node" => TradeDirection::VertexToNode,
                    "node-to-vertex" => TradeDirection::NodeToVertex,
                    other => {
                        return Err(err(
                            line.no,
                            format!("expected `vertex-to-node` or `node-to-vertex`, found `{other}`"),
                        ))
                    }
                },
            },
            "slide" => MoveKind::Slide {
                index: parse_usize(take(&f, "index", line.no)?, line.no)?,
                t: parse_rational(take(&f, "t", line.no)?, line.no)?,
            },
            "at-blowup" => MoveKind::AtBlowup {
                edge: parse_usize(take(&f, "edge", line.no)?, line.no)?,
                t: parse_rational(take(&f, "t", line.no)?, line.no)?,
            },
            "at-blowdown" => MoveKind::AtBlowdown {
                index: parse_usize(take(&f, "index", line.no)?, line.no)?,
            },
            "toric-blowup" => MoveKind::ToricBlowup {
                index: parse_usize(take(&f, "index", line.no)?, line.no)?,
            },
            "toric-blowdown" => MoveKind::ToricBlowdown {
                edge: parse_usize(take(&f, "edge", line.no)?, line.no)?,
            },
            "split" => MoveKind::Split {
                index: parse_usize(take(&f, "index", line.no)?, line.no)?,
            },
            "hurwitz" => MoveKind::Hurwitz {
                index: parse_usize(take(&f, "index", line.no)?, line.no)?,
                direction: parse_direction(take(&f, "dir", line.no)?, line.no)?,
            },
            other => return Err(err(line.no, format!("unknown move `{other}`"))),
        };
        out.push(MoveRecord {
            kind,
            before_hash: parse_hash(take(&f, "before", line.no)?, line.no)?,
            after_hash: parse_hash(take(&f, "after", line.no)?, line.no)?,
        });
    }
    Ok(out)
}

fn parse_word(lines: &[Line<'_>]) -> Result<FactorizationWord, ParseError> {
    if lines[0].tokens.len() > 1 {
        return Err(err(lines[0].no, "unexpected fields after `word`"));
    }
    let mut factors = Vec::new();
    for line in &lines[1..] {
        if line.tokens[0] != "factor" {
            return Err(err(line.no, format!("expected `factor`, found `{}`", line.tokens[0])));
        }
        let f = fields(&line.tokens[1..], line.no)?;
        check_keys(&f, &["e", "mult"], line.no)?;
        let eigen = parse_vector(take(&f, "e", line.no)?, line.no)?;
        let multiplicity = match take_opt(&f, "mult") {
            Some(s) => parse_u64(s, line.no)?,
            None => 1,
        };
        let factor = ParabolicMonodromy::from_eigen_vector(eigen, multiplicity)
            .map_err(|e| err(line.no, e.to_string()))?;
        factors.push(factor);
    }
    Ok(FactorizationWord::new(factors))
}

fn write_rational(out: &mut String, r: &BigRational) {
    if r.denom().is_one() {
        let _ = write!(out, "{}", r.numer());
    } else {
        let _ = write!(out, "{}/{}", r.numer(), r.denom());
    }
}

fn serialize_disk(base: &DiskBase) -> String {
    let mut out = String::from("base disk\n");
    let k = base.len();
    for i in 0..k {
        let edge = &base.edges[i];
        let _ = write!(out, "edge u={}", edge.normal);
        if let Some(len) = &edge.length {
            out.push_str(" len=");
            write_rational(&mut out, len);
        }
        out.push('\n');
        match &base.corners[(i + 1) % k] {
            Corner::Vertex => out.push_str("corner vertex\n"),
            Corner::Node { eigen, multiplicity, slide } => {
                let _ = write!(out, "corner node e={eigen} mult={multiplicity} t=");
                write_rational(&mut out, slide);
                out.push('\n');
            }
        }
    }
    out
}

fn serialize_non_disk(base: &NonDiskBase) -> String {
    match base.topology {
        Topology::Sphere | Topology::Rp2 => {
            format!("base {} nodes={}\n", base.topology.name(), base.nodes)
        }
        Topology::Cylinder | Topology::Moebius => format!(
            "base {} lambda={} blowups={}\n",
            base.topology.name(),
            base.lambda,
            base.nodes
        ),
        Topology::Torus | Topology::KleinBottle => {
            let (m, n) = base.chern.unwrap_or((0, 0));
            format!("base {} lambda={} chern=({},{})\n", base.topology.name(), base.lambda, m, n)
        }
    }
}

pub fn serialize_moves(records: &[MoveRecord]) -> String {
    let mut out = String::from("moves\n");
    for rec in records {
        match &rec.kind {
            MoveKind::Branch { index, direction } => {
                let _ = write!(out, "branch index={index} dir={}", direction_name(*direction));
            }
            MoveKind::Trade { index, direction } => {
                let dir = match direction {
                    TradeDirection::VertexToNode => "vertex-to-node",
                    TradeDirection::NodeToVertex => "node-to-vertex",
                };
                let _ = write!(out, "trade index={index} dir={dir}");
            }
            MoveKind::Slide { index, t } => {
                let _ = write!(out, "slide index={index} t=");
                write_rational(&mut out, t);
            }
            MoveKind::AtBlowup { edge, t } => {
                let _ = write!(out, "at-blowup edge={edge} t=");
                write_rational(&mut out, t);
            }
            MoveKind::AtBlowdown { index } => {
                let _ = write!(out, "at-blowdown index={index}");
            }
            MoveKind::ToricBlowup { index } => {
                let _ = write!(out, "toric-blowup index={index}");
            }
            MoveKind::ToricBlowdown { edge } => {
                let _ = write!(out, "toric-blowdown edge={edge}");
            }
            MoveKind::Split { index } => {
                let _ = write!(out, "split index={index}");
            }
            MoveKind::Hurwitz { index, direction } => {
                let _ = write!(out, "hurwitz index={index} dir={}", direction_name(*direction));
            }
        }
        let _ = writeln!(out, " before={:016x} after={:016x}", rec.before_hash, rec.after_hash);
    }
    out
}

fn direction_name(d: MoveDirection) -> &'static str {
    match d {
        MoveDirection::Forward => "forward",
        MoveDirection::Backward => "backward",
    }
}

pub fn serialize_word(word: &FactorizationWord) -> String {
    let mut out = String::from("word\n");
    for p in &word.factors {
        let _ = writeln!(out, "factor e={} mult={}", p.eigen(), p.multiplicity());
    }
    out
}

/// Serialize any document; `parse` inverts this byte-exactly.
pub fn serialize(doc: &Document) -> String {
    match doc {
        Document::Disk(base) => serialize_disk(base),
        Document::NonDisk(base) => serialize_non_disk(base),
        Document::Moves(records) => serialize_moves(records),
        Document::Word(word) => serialize_word(word),
    }
}
