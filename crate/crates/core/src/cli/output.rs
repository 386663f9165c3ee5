//! Rows shared by the `tree`, `value` and `table` commands.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::cycle_integral::CycleValue;
use crate::error::Result;
use crate::markov_tree::TreeNode;

pub const CSV_HEADER: [&str; 11] = [
    "path", "level", "p", "q", "c", "Jq_re", "Jq_im", "j_re", "j_im", "log_eps", "quad_err",
];

/// `x` with 12 significant digits: positional for moderate exponents,
/// scientific otherwise.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("exponent");
    if (-5..12).contains(&exp) {
        format!("{:.*}", (11 - exp) as usize, x)
    } else {
        sci
    }
}

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    sig12(x).parse().expect("formatted float parses")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueRow {
    pub path: String,
    pub level: u32,
    pub p: u64,
    pub q: u64,
    pub c: String,
    #[serde(rename = "Jq_re")]
    pub jq_re: f64,
    #[serde(rename = "Jq_im")]
    pub jq_im: f64,
    pub j_re: f64,
    pub j_im: f64,
    pub log_eps: f64,
    pub quad_err: f64,
}

impl ValueRow {
    /// Every float rounded to 12 significant digits.
    pub fn new(v: &CycleValue) -> Self {
        let jq = v.j_over_q();
        ValueRow {
            path: v.key.to_string(),
            level: v.level(),
            p: v.p,
            q: v.q,
            c: v.c.to_string(),
            jq_re: round12(jq.re),
            jq_im: round12(jq.im),
            j_re: round12(v.j.re),
            j_im: round12(v.j.im),
            log_eps: round12(v.log_eps),
            quad_err: round12(v.quad_err),
        }
    }

    fn csv_record(&self) -> [String; 11] {
        [
            self.path.clone(),
            self.level.to_string(),
            self.p.to_string(),
            self.q.to_string(),
            self.c.clone(),
            sig12(self.jq_re),
            sig12(self.jq_im),
            sig12(self.j_re),
            sig12(self.j_im),
            sig12(self.log_eps),
            sig12(self.quad_err),
        ]
    }
}

pub fn write_value_csv(out: &mut dyn Write, rows: &[ValueRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.csv_record())?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_value_csv(input: impl std::io::Read) -> Result<Vec<ValueRow>> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<std::result::Result<_, _>>()?)
}

pub fn write_json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeRow {
    pub path: String,
    pub level: u32,
    pub p: u64,
    pub q: u64,
    pub c: String,
    /// Run-length notation, `2_3` for three consecutive 2s.
    pub period: String,
}

impl TreeRow {
    pub fn new(n: &TreeNode) -> Self {
        TreeRow {
            path: n.key.to_string(),
            level: n.level,
            p: n.farey.p,
            q: n.farey.q,
            c: n.c().to_string(),
            period: n.period.to_run_length(),
        }
    }
}

pub fn write_tree_csv(out: &mut dyn Write, rows: &[TreeRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_tree_text(out: &mut dyn Write, rows: &[TreeRow]) -> Result<()> {
    let width = rows.iter().map(|r| r.path.len()).max().unwrap_or(4).max(4);
    writeln!(out, "{:<width$}  {:>5}  {:>11}  {:>24}  period", "path", "level", "p/q", "c")?;
    for r in rows {
        writeln!(
            out,
            "{:<width$}  {:>5}  {:>11}  {:>24}  ({})",
            r.path,
            r.level,
            format!("{}/{}", r.p, r.q),
            r.c,
            r.period
        )?;
    }
    Ok(())
}

fn complex(re: f64, im: f64) -> String {
    if im < 0.0 {
        format!("{} - {}i", sig12(re), sig12(-im))
    } else {
        format!("{} + {}i", sig12(re), sig12(im))
    }
}

pub fn write_value_text(out: &mut dyn Write, r: &ValueRow) -> Result<()> {
    writeln!(out, "node      {}", r.path)?;
    writeln!(out, "level     {}", r.level)?;
    writeln!(out, "fraction  {}/{}", r.p, r.q)?;
    writeln!(out, "c         {}", r.c)?;
    writeln!(out, "J/q       {}", complex(r.jq_re, r.jq_im))?;
    writeln!(out, "j         {}", complex(r.j_re, r.j_im))?;
    writeln!(out, "log eps   {}", sig12(r.log_eps))?;
    writeln!(out, "error     {}", sig12(r.quad_err))?;
    Ok(())
}
