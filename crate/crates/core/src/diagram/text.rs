//! Line-oriented text format:
//!
//! ```text
//! tangle
//! dim 3
//! source [0,0]
//! target [0,0]
//! slice x+@0(0,0)
//! slice cup@0(-1) id@1(0)
//! end
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;

use super::{AmbientDim, Diagram, DiagramError, Event, EventKind, Label, ObjectWord};

pub(super) fn write_diagram(d: &Diagram, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    writeln!(f, "tangle")?;
    writeln!(f, "dim {}", d.dim.n())?;
    writeln!(f, "source {}", d.source)?;
    writeln!(f, "target {}", d.target)?;
    for s in &d.slices {
        write!(f, "slice")?;
        for e in &s.events {
            write!(f, " {e}")?;
        }
        writeln!(f)?;
    }
    writeln!(f, "end")
}

fn err(line: usize, message: impl Into<String>) -> DiagramError {
    DiagramError::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_word(text: &str) -> Option<ObjectWord> {
    let inner = text.trim().strip_prefix('[')?.strip_suffix(']')?.trim();
    if inner.is_empty() {
        return Some(ObjectWord::empty());
    }
    inner
        .split(',')
        .map(|t| t.trim().parse::<Label>().ok())
        .collect::<Option<Vec<_>>>()
        .map(ObjectWord)
}

fn parse_event(tok: &str) -> Option<Event> {
    let (name, rest) = tok.split_once('@')?;
    let (pos, args) = rest.split_once('(')?;
    let args = args.strip_suffix(')')?;
    let position: usize = pos.parse().ok()?;
    let nums: Vec<Label> = args
        .split(',')
        .map(|a| a.trim().parse().ok())
        .collect::<Option<_>>()?;
    let kind = match (name, nums.as_slice()) {
        ("id", [j]) => EventKind::Id(*j),
        ("cup", [k]) => EventKind::Cup(*k),
        ("cap", [k]) => EventKind::Cap(*k),
        ("x+", [a, b]) => EventKind::CrossPos(*a, *b),
        ("x-", [a, b]) => EventKind::CrossNeg(*a, *b),
        _ => return None,
    };
    Some(Event::new(kind, position))
}

/// Parse and type-check a diagram. The declared target must match the
/// computed one under the declared dimension.
pub fn parse_diagram(text: &str) -> Result<Diagram, DiagramError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut expect = |key: &str| -> Result<(usize, String), DiagramError> {
        let (n, l) = lines.next().ok_or_else(|| err(0, format!("missing `{key}`")))?;
        let rest = l
            .strip_prefix(key)
            .ok_or_else(|| err(n, format!("expected `{key}`")))?;
        Ok((n, rest.trim().to_string()))
    };
    let (n, rest) = expect("tangle")?;
    if !rest.is_empty() {
        return Err(err(n, "unexpected text after `tangle`"));
    }
    let (n, rest) = expect("dim")?;
    let dim = rest
        .parse::<u32>()
        .ok()
        .and_then(AmbientDim::from_n)
        .ok_or_else(|| err(n, format!("bad dimension `{rest}`")))?;
    let (n, rest) = expect("source")?;
    let source = parse_word(&rest).ok_or_else(|| err(n, format!("bad word `{rest}`")))?;
    let (n, rest) = expect("target")?;
    let target = parse_word(&rest).ok_or_else(|| err(n, format!("bad word `{rest}`")))?;
    let _ = n;
    let mut slices = Vec::new();
    let mut ended = false;
    for (n, l) in lines {
        if ended {
            return Err(err(n, "text after `end`"));
        }
        if l == "end" {
            ended = true;
            continue;
        }
        let rest = l
            .strip_prefix("slice")
            .ok_or_else(|| err(n, "expected `slice` or `end`"))?;
        let events = rest
            .split_whitespace()
            .map(|t| parse_event(t).ok_or_else(|| err(n, format!("bad event `{t}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        slices.push(events);
    }
    if !ended {
        return Err(err(0, "missing `end`"));
    }
    let mut d = Diagram::new(dim, source, slices)?;
    if !dim.words_match(&d.target, &target) {
        return Err(DiagramError::BoundaryMismatch {
            left: d.target,
            right: target,
        });
    }
    d.target = target;
    Ok(d)
}
