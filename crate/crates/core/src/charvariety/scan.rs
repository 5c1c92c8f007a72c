use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use super::spectrum::{spectrum, SpectralObject, SpectrumReport, Tolerances};
use super::{Character, Turn};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Points per dimension `g`; coordinates are `k/g`.
    pub grid: usize,
    /// Characters at sup-circular distance `<= exclusion_radius` from φ₀ form N.
    pub exclusion_radius: f64,
    pub tolerances: Tolerances,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { grid: 64, exclusion_radius: 0.0, tolerances: Tolerances::default(), jobs: None }
    }
}

impl ScanOptions {
    pub fn validate(&self) -> Result<()> {
        if self.grid < 2 {
            return Err(Error::Argument(format!("grid must be at least 2, got {}", self.grid)));
        }
        if !(0.0..0.5).contains(&self.exclusion_radius) {
            return Err(Error::Argument(format!(
                "exclusion radius must lie in [0, 1/2), got {}",
                self.exclusion_radius
            )));
        }
        if self.jobs == Some(0) {
            return Err(Error::Argument("worker count must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FailedPoint {
    pub index: usize,
    pub character: Character,
    pub error: String,
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub grid: usize,
    pub num_vars: usize,
    pub exclusion_radius: f64,
    /// `rho` at the trivial character.
    pub k: f64,
    /// `K - max rho` over successful points outside N; `None` if there are none.
    pub delta: Option<f64>,
    /// One entry per grid point in grid-index order; `None` where the spectrum failed.
    pub points: Vec<(Character, Option<SpectrumReport>)>,
    pub failed_points: Vec<FailedPoint>,
}

/// Grid point with index `idx`: the first coordinate varies slowest.
pub fn grid_character(num_vars: usize, grid: usize, mut idx: usize) -> Character {
    let mut turns = vec![Turn::zero(); num_vars];
    for slot in turns.iter_mut().rev() {
        *slot = Turn::rational((idx % grid) as i64, grid as i64);
        idx /= grid;
    }
    Character::new(turns).expect("rational turns are valid")
}

/// Spectral radius over the `g^h` torsion grid, with `K = ρ(φ₀)` and the
/// empirical gap `δ` outside the exclusion neighborhood.
pub fn rho_scan(obj: &SpectralObject, opts: &ScanOptions) -> Result<ScanReport> {
    opts.validate()?;
    let h = obj.num_vars();
    let total = u32::try_from(h)
        .ok()
        .and_then(|h| opts.grid.checked_pow(h))
        .filter(|&n| n <= 1 << 26)
        .ok_or_else(|| Error::Argument(format!("grid {}^{h} is too large", opts.grid)))?;

    let eval = |idx: usize| {
        let chi = grid_character(h, opts.grid, idx);
        let rep = spectrum(obj, &chi, &opts.tolerances);
        (chi, rep)
    };
    let results: Vec<(Character, Result<SpectrumReport>)> = match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Argument(format!("thread pool: {e}")))?
            .install(|| (0..total).into_par_iter().map(eval).collect()),
        None => (0..total).into_par_iter().map(eval).collect(),
    };

    let mut points = Vec::with_capacity(total);
    let mut failed_points = Vec::new();
    for (index, (chi, rep)) in results.into_iter().enumerate() {
        match rep {
            Ok(r) => points.push((chi, Some(r))),
            Err(e) => {
                if index == 0 {
                    return Err(e);
                }
                failed_points.push(FailedPoint { index, character: chi.clone(), error: e.to_string() });
                points.push((chi, None));
            }
        }
    }
    let k = points[0].1.as_ref().expect("trivial character succeeded").rho;
    let delta = points
        .iter()
        .filter(|(chi, _)| chi.distance_to_trivial() > opts.exclusion_radius)
        .filter_map(|(_, r)| r.as_ref().map(|r| r.rho))
        .reduce(f64::max)
        .map(|m| k - m);
    Ok(ScanReport {
        grid: opts.grid,
        num_vars: h,
        exclusion_radius: opts.exclusion_radius,
        k,
        delta,
        points,
        failed_points,
    })
}

/// `x` with 12 significant digits, like C's `%.12g`.
pub fn format_sig12(x: f64) -> String {
    const DIGITS: usize = 12;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= DIGITS as i32 {
        let mantissa = trim_zeros(mantissa);
        return format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (DIGITS as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl ScanReport {
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let mut header: Vec<String> = (1..=self.num_vars).map(|i| format!("turn_{i}")).collect();
        header.push("rho".into());
        header.push("gamma".into());
        w.write_all(header.join(",").as_bytes())?;
        w.write_all(b"\n")?;
        let mut line = String::new();
        for (chi, rep) in &self.points {
            line.clear();
            for t in chi.turns() {
                let _ = write!(line, "{},", format_sig12(t.as_f64()));
            }
            let (rho, gamma) = rep.as_ref().map_or((f64::NAN, f64::NAN), |r| (r.rho, r.gamma));
            let _ = writeln!(line, "{},{}", format_sig12(rho), format_sig12(gamma));
            w.write_all(line.as_bytes())?;
        }
        Ok(())
    }

    pub fn summary_json(&self) -> Value {
        let failed: Vec<Value> = self
            .failed_points
            .iter()
            .map(|f| json!({"index": f.index, "character": f.character.to_string(), "error": f.error}))
            .collect();
        json!({
            "K": self.k,
            "delta": self.delta,
            "exclusion_radius": self.exclusion_radius,
            "grid": self.grid,
            "num_vars": self.num_vars,
            "points": self.points.len(),
            "failed_points": failed,
            "note": "delta is the empirical minimum of K - rho over grid points outside the \
                     exclusion neighborhood (sup circular turns distance > exclusion_radius), \
                     not a proven bound",
        })
    }

    /// Writes `<prefix>.dat` and a gnuplot script `<prefix>.gp` that plots it.
    pub fn write_plot(&self, prefix: &Path) -> io::Result<(PathBuf, PathBuf)> {
        let data = prefix.with_extension("dat");
        let script = prefix.with_extension("gp");
        let mut out = String::new();
        for (idx, (chi, rep)) in self.points.iter().enumerate() {
            if self.num_vars == 2 && idx > 0 && idx % self.grid == 0 {
                out.push('\n');
            }
            let rho = rep.as_ref().map_or(f64::NAN, |r| r.rho);
            if self.num_vars <= 2 {
                for t in chi.turns() {
                    out.push_str(&format_sig12(t.as_f64()));
                    out.push(' ');
                }
            } else {
                let _ = write!(out, "{idx} ");
            }
            out.push_str(&format_sig12(rho));
            out.push('\n');
        }
        std::fs::write(&data, out)?;

        let name = data.file_name().and_then(|n| n.to_str()).unwrap_or("scan.dat");
        let body = match self.num_vars {
            1 => format!(
                "set xlabel 'turn'\nset ylabel 'rho'\nplot '{name}' using 1:2 with lines title 'rho'\n"
            ),
            2 => format!(
                "set xlabel 'turn_1'\nset ylabel 'turn_2'\nset zlabel 'rho'\nset pm3d\n\
                 splot '{name}' using 1:2:3 with pm3d title 'rho'\n"
            ),
            _ => format!(
                "set xlabel 'grid index'\nset ylabel 'rho'\nplot '{name}' using 1:2 with points title 'rho'\n"
            ),
        };
        let header = format!("# K = {}\n", format_sig12(self.k));
        std::fs::write(&script, header + &body + "pause -1\n")?;
        Ok((data, script))
    }
}
