//! Line-oriented text format for profiles.
//!
//! ```text
//! z_cut=3
//! breakpoints=-3,-0.18,0,0.18,3
//! values=-1,1,-1,1
//! tail=sign
//! ```
//!
//! `tail` is either `sign` or `const:LEFT:RIGHT`. Floats are written with the
//! shortest representation that round-trips, so load(save(p)) == p.

use super::{Profile, TailRule};
use crate::error::{Error, Result};

fn join(xs: &[f64]) -> String {
    xs.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(",")
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("bad number {s:?}: {e}")))
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(parse_f64).collect()
}

impl Profile {
    pub fn to_text(&self) -> String {
        let tail = match self.tail() {
            TailRule::SignTails => "sign".to_string(),
            TailRule::ExplicitConstant { left, right } => format!("const:{left:?}:{right:?}"),
        };
        format!(
            "z_cut={:?}\nbreakpoints={}\nvalues={}\ntail={}\n",
            self.z_cut(),
            join(self.breakpoints()),
            join(self.values()),
            tail
        )
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let (mut z_cut, mut bps, mut vals, mut tail) = (None, None, None, None);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", lineno + 1)))?;
            match key.trim() {
                "z_cut" => z_cut = Some(parse_f64(value)?),
                "breakpoints" => bps = Some(parse_list(value)?),
                "values" => vals = Some(parse_list(value)?),
                "tail" => tail = Some(parse_tail(value.trim())?),
                other => return Err(Error::Parse(format!("line {}: unknown key {other:?}", lineno + 1))),
            }
        }
        let missing = |k: &str| Error::Parse(format!("missing key {k}"));
        Profile::new(
            z_cut.ok_or_else(|| missing("z_cut"))?,
            bps.ok_or_else(|| missing("breakpoints"))?,
            vals.ok_or_else(|| missing("values"))?,
            tail.ok_or_else(|| missing("tail"))?,
        )
    }
}

fn parse_tail(s: &str) -> Result<TailRule> {
    if s == "sign" {
        return Ok(TailRule::SignTails);
    }
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["const", l, r] => Ok(TailRule::ExplicitConstant {
            left: parse_f64(l)?,
            right: parse_f64(r)?,
        }),
        _ => Err(Error::Parse(format!("bad tail rule {s:?}"))),
    }
}
