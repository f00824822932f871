//! Plain-text checkpoint files for long searches.
//!
//! ```text
//! house-search-checkpoint 1
//! degree 26
//! height 1
//! threshold none
//! skip_nonprimitive false
//! shard 0 4
//! next 123456
//! near 1.05784846909829 8 1 0 0 1 0 -1 0 0 -1 -1 1 0 0 2
//! below ...
//! ```

use std::fs;
use std::io::Write;
use std::path::Path;

use super::{RecordKey, SearchHit};
use crate::error::SearchError;
use crate::poly::HalfSpec;

const MAGIC: &str = "house-search-checkpoint";
const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckpointState {
    pub key: RecordKey,
    pub shard: (usize, usize),
    /// Next odometer index to examine.
    pub next: u128,
    pub near: Vec<SearchHit>,
    pub below: Vec<SearchHit>,
}

fn hit_line(tag: &str, h: &SearchHit) -> String {
    let coeffs: Vec<String> = h.half.iter().map(|c| c.to_string()).collect();
    // 17 significant digits round-trip an f64 exactly.
    format!("{tag} {:.16e} {} {}", h.house, h.nu, coeffs.join(" "))
}

pub fn save_checkpoint(path: &Path, state: &CheckpointState) -> Result<(), SearchError> {
    let mut text = String::new();
    text.push_str(&format!("{MAGIC} {VERSION}\n"));
    text.push_str(&format!("degree {}\n", state.key.degree));
    text.push_str(&format!("height {}\n", state.key.height));
    match state.key.threshold {
        Some(t) => text.push_str(&format!("threshold {t:.16e}\n")),
        None => text.push_str("threshold none\n"),
    }
    text.push_str(&format!(
        "skip_nonprimitive {}\n",
        state.key.skip_nonprimitive
    ));
    text.push_str(&format!("shard {} {}\n", state.shard.0, state.shard.1));
    text.push_str(&format!("next {}\n", state.next));
    for h in &state.near {
        text.push_str(&hit_line("near", h));
        text.push('\n');
    }
    for h in &state.below {
        text.push_str(&hit_line("below", h));
        text.push('\n');
    }
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

fn bad(msg: impl Into<String>) -> SearchError {
    SearchError::Checkpoint(msg.into())
}

fn parse<T: std::str::FromStr>(s: Option<&str>, what: &str) -> Result<T, SearchError> {
    s.and_then(|v| v.parse().ok())
        .ok_or_else(|| bad(format!("bad or missing {what}")))
}

fn field<'a>(
    lines: &mut impl Iterator<Item = &'a str>,
    name: &str,
) -> Result<Vec<&'a str>, SearchError> {
    let line = lines
        .next()
        .ok_or_else(|| bad(format!("missing `{name}` line")))?;
    let mut parts = line.split_whitespace();
    if parts.next() != Some(name) {
        return Err(bad(format!("expected `{name}`, found `{line}`")));
    }
    Ok(parts.collect())
}

fn parse_hit(parts: &[&str]) -> Result<SearchHit, SearchError> {
    let house: f64 = parse(parts.first().copied(), "house")?;
    let nu: usize = parse(parts.get(1).copied(), "nu")?;
    let half = parts[2.min(parts.len())..]
        .iter()
        .map(|t| parse(Some(t), "coefficient"))
        .collect::<Result<Vec<i64>, _>>()?;
    let spec = HalfSpec::new(half.clone()).map_err(|e| bad(e.to_string()))?;
    Ok(SearchHit {
        poly: spec.expand(),
        half,
        house,
        nu,
    })
}

pub fn load_checkpoint(path: &Path) -> Result<CheckpointState, SearchError> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = field(&mut lines, MAGIC)?;
    let version: u32 = parse(header.first().copied(), "version")?;
    if version != VERSION {
        return Err(bad(format!("unsupported checkpoint version {version}")));
    }
    let degree = parse(field(&mut lines, "degree")?.first().copied(), "degree")?;
    let height = parse(field(&mut lines, "height")?.first().copied(), "height")?;
    let threshold = match field(&mut lines, "threshold")?.first().copied() {
        Some("none") => None,
        t => Some(parse(t, "threshold")?),
    };
    let skip_nonprimitive = parse(
        field(&mut lines, "skip_nonprimitive")?.first().copied(),
        "skip_nonprimitive",
    )?;
    let shard_parts = field(&mut lines, "shard")?;
    let shard = (
        parse(shard_parts.first().copied(), "shard index")?,
        parse(shard_parts.get(1).copied(), "shard count")?,
    );
    let next = parse(field(&mut lines, "next")?.first().copied(), "next")?;
    let mut near = Vec::new();
    let mut below = Vec::new();
    for line in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.first() {
            Some(&"near") => near.push(parse_hit(&parts[1..])?),
            Some(&"below") => below.push(parse_hit(&parts[1..])?),
            None => {}
            Some(other) => return Err(bad(format!("unknown entry `{other}`"))),
        }
    }
    Ok(CheckpointState {
        key: RecordKey {
            degree,
            height,
            threshold,
            skip_nonprimitive,
        },
        shard,
        next,
        near,
        below,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, Encoding};

    #[test]
    fn round_trip() {
        let dir = std::env::temp_dir().join(format!("house-ckpt-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("state.txt");
        let hit = SearchHit {
            half: vec![1, 1, 3],
            poly: parse_poly("1 1 3", Encoding::Half).unwrap(),
            house: 1.5392223384204306,
            nu: 2,
        };
        let state = CheckpointState {
            key: RecordKey {
                degree: 4,
                height: 3,
                threshold: Some(1.7),
                skip_nonprimitive: false,
            },
            shard: (1, 3),
            next: 99,
            near: vec![hit.clone()],
            below: vec![hit],
        };
        save_checkpoint(&path, &state).unwrap();
        assert_eq!(load_checkpoint(&path).unwrap(), state);
        fs::write(&path, "house-search-checkpoint 7\n").unwrap();
        assert!(load_checkpoint(&path).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }
}
