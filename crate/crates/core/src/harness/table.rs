//! Distribution tables for the command line.

use std::ops::RangeInclusive;
use std::str::FromStr;

use serde_json::json;

use crate::algebra::Distribution;
use crate::error::{Error, Result};
use crate::perm::{Class, EnumGuard};
use crate::stats::StatExpr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::Parse(format!("unknown table format `{other}`"))),
        }
    }
}

/// Reads `"5"` or `"1..5"` (inclusive).
pub fn parse_sizes(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::Parse(format!("bad size range `{s}`, expected `K` or `A..B`"));
    let s = s.trim();
    match s.split_once("..") {
        None => {
            let n = s.parse().map_err(|_| bad())?;
            Ok(n..=n)
        }
        Some((a, b)) => {
            let (a, b): (usize, usize) =
                (a.parse().map_err(|_| bad())?, b.trim_start_matches('=').parse().map_err(|_| bad())?);
            if a > b {
                return Err(bad());
            }
            Ok(a..=b)
        }
    }
}

fn tabulate(class: &str, n: usize, stats: &[StatExpr], guard: &EnumGuard) -> Result<Distribution> {
    if class.trim() == "B" {
        return Distribution::of_signed(n, stats, guard);
    }
    let class: Class = class.parse()?;
    Distribution::of_class(&class, n, stats, guard)
}

/// The joint distribution of `stats` over the class (`S`, `D`, `B` or
/// `S(τ)`) for each size, one row per value tuple in increasing order.
pub fn table(class: &str, stats: &[StatExpr], sizes: RangeInclusive<usize>, format: TableFormat) -> Result<String> {
    if stats.is_empty() {
        return Err(Error::Parse("at least one statistic is needed".into()));
    }
    let guard = EnumGuard::default();
    let mut rows: Vec<(usize, Vec<i64>, u64)> = Vec::new();
    for n in sizes {
        let d = tabulate(class, n, stats, &guard)?;
        rows.extend(d.counts().iter().map(|(k, &c)| (n, k.clone(), c)));
    }
    let labels: Vec<String> = stats.iter().map(|s| s.label()).collect();
    Ok(match format {
        TableFormat::Csv => {
            let mut out = format!("n,{},count\n", labels.join(","));
            for (n, k, c) in rows {
                let vals: Vec<String> = k.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!("{n},{},{c}\n", vals.join(",")));
            }
            out
        }
        TableFormat::Json => {
            let rows: Vec<_> = rows.into_iter().map(|(n, k, c)| json!({"n": n, "values": k, "count": c})).collect();
            let doc = json!({"class": class.trim(), "stats": labels, "rows": rows});
            serde_json::to_string_pretty(&doc).expect("table serializes") + "\n"
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cfrac::named_spec;
    use crate::algebra::MPoly;

    fn counts_by_n(csv: &str) -> Vec<Vec<u64>> {
        let mut out: Vec<Vec<u64>> = Vec::new();
        for line in csv.lines().skip(1) {
            let f: Vec<&str> = line.split(',').collect();
            let n: usize = f[0].parse().unwrap();
            if out.len() < n {
                out.resize(n, Vec::new());
            }
            out[n - 1].push(f.last().unwrap().parse().unwrap());
        }
        out
    }

    #[test]
    fn eulerian_triangle() {
        let t = table("S", &["des".parse().unwrap()], 1..=5, TableFormat::Csv).unwrap();
        assert!(t.starts_with("n,des,count\n1,0,1\n"));
        assert_eq!(
            counts_by_n(&t),
            vec![vec![1], vec![1, 1], vec![1, 4, 1], vec![1, 11, 11, 1], vec![1, 26, 66, 26, 1]]
        );
    }

    #[test]
    fn narayana_row() {
        let t = table("S(231)", &["des".parse().unwrap()], 4..=4, TableFormat::Csv).unwrap();
        assert_eq!(t, "n,des,count\n4,0,1\n4,1,6\n4,2,6\n4,3,1\n");
    }

    #[test]
    fn derangement_row_matches_the_fraction() {
        let t = table("D", &["exc".parse().unwrap()], 4..=4, TableFormat::Json).unwrap();
        let doc: serde_json::Value = serde_json::from_str(&t).unwrap();
        let mut poly = MPoly::zero();
        for row in doc["rows"].as_array().unwrap() {
            let e = row["values"][0].as_u64().unwrap() as u32;
            poly = poly + MPoly::monomial(row["count"].as_u64().unwrap(), &[("t", e)]);
        }
        let series = named_spec("d-qtuvw").unwrap().expand(4);
        let mut at_one = series.coeff(4).clone();
        for v in ["q", "u", "v", "w"] {
            at_one = at_one.substitute(v, &MPoly::one());
        }
        assert_eq!(poly, at_one);
    }

    #[test]
    fn signed_and_errors() {
        let t = table("B", &["neg".parse().unwrap(), "des_B".parse().unwrap()], 1..=1, TableFormat::Csv).unwrap();
        assert_eq!(t, "n,neg,des_B,count\n1,0,0,1\n1,1,1,1\n");
        assert!(table("S", &["des".parse().unwrap()], 12..=12, TableFormat::Csv).is_err());
        assert!(table("Q", &["des".parse().unwrap()], 2..=2, TableFormat::Csv).is_err());
        assert_eq!(parse_sizes("3").unwrap(), 3..=3);
        assert_eq!(parse_sizes("1..5").unwrap(), 1..=5);
        assert!(parse_sizes("5..1").is_err());
        assert_eq!("JSON".parse::<TableFormat>().unwrap(), TableFormat::Json);
    }
}
