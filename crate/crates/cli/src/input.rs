use std::fmt;
use std::fs;
use std::path::PathBuf;

use orthospace::enumerate::parse_graph6;
use orthospace::{OrthoSpace, SpaceDescription, VertexId};

/// Where a space comes from. Exactly one source per invocation.
#[derive(Debug, Clone)]
pub enum Source {
    File(PathBuf),
    Graph6(String),
    Edges(String),
}

#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A parsed space with a short label for multi-space inputs.
pub struct Loaded {
    pub label: String,
    pub space: OrthoSpace,
}

pub fn load(source: &Source) -> Result<Vec<Loaded>, InputError> {
    match source {
        Source::Graph6(text) => {
            let space = parse_graph6(text).map_err(|e| InputError(format!("--g6: {e}")))?;
            Ok(vec![Loaded { label: text.trim().to_string(), space }])
        }
        Source::Edges(text) => {
            let space = parse_json(text).map_err(|e| InputError(format!("--edges: {e}")))?;
            Ok(vec![Loaded { label: "edges".into(), space }])
        }
        Source::File(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            let name = path.display();
            if text.trim_start().starts_with(['{', '[']) {
                let space = parse_json(&text).map_err(|e| InputError(format!("{name}: {e}")))?;
                return Ok(vec![Loaded { label: name.to_string(), space }]);
            }
            let mut out = Vec::new();
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let space = parse_graph6(line)
                    .map_err(|e| InputError(format!("{name}:{}: {e}", i + 1)))?;
                out.push(Loaded { label: line.trim().to_string(), space });
            }
            if out.is_empty() {
                return Err(InputError(format!("{name}: no graph6 lines")));
            }
            Ok(out)
        }
    }
}

/// Accepts `{"n":..,"edges":..}`, `{"n":..,"cliques":..}`, or a bare edge
/// array whose vertex count is one more than the largest endpoint.
fn parse_json(text: &str) -> Result<OrthoSpace, String> {
    if text.trim_start().starts_with('[') {
        let edges: Vec<(VertexId, VertexId)> =
            serde_json::from_str(text).map_err(|e| e.to_string())?;
        let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        return OrthoSpace::new(n, &edges).map_err(|e| e.to_string());
    }
    let desc: SpaceDescription = serde_json::from_str(text).map_err(|e| {
        format!(
            "line {}, column {}: expected {{\"n\":..,\"edges\":..}} or {{\"n\":..,\"cliques\":..}} ({e})",
            e.line(),
            e.column()
        )
    })?;
    desc.build().map_err(|e| e.to_string())
}
