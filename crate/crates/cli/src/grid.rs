use std::str::FromStr;

use anyhow::{bail, Context};
use gsn_core::catalog::{family_collection, Collection, CountingMode, Family};

/// One `(family, k)` point of an experiment grid. `k = 0` means no
/// structural identifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridPoint {
    pub family: Family,
    pub k: usize,
}

impl GridPoint {
    pub fn collection(&self, mode: CountingMode) -> anyhow::Result<Collection> {
        if self.k == 0 {
            return Ok(Collection::empty(mode));
        }
        Ok(family_collection(self.family, self.k, mode)?)
    }
}

/// Parses `cycle:6`, `path:3-6` or a comma-separated list of those.
pub fn parse_grid(spec: &str) -> anyhow::Result<Vec<GridPoint>> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (fam, ks) = item
            .split_once(':')
            .with_context(|| format!("grid entry '{item}' is not family:k or family:kmin-kmax"))?;
        let family = Family::from_str(fam)?;
        let (lo, hi) = match ks.split_once('-') {
            Some((a, b)) => (a.parse::<usize>()?, b.parse::<usize>()?),
            None => {
                let k = ks.parse::<usize>()?;
                (k, k)
            }
        };
        if lo > hi {
            bail!("empty range in grid entry '{item}'");
        }
        out.extend((lo..=hi).map(|k| GridPoint { family, k }));
    }
    if out.is_empty() {
        bail!("empty grid");
    }
    Ok(out)
}

pub fn parse_list<T: FromStr>(spec: &str) -> anyhow::Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| anyhow::anyhow!("'{s}': {e}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_ranges() {
        let g = parse_grid("cycle:3-5, clique:4").unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(
            g[3],
            GridPoint {
                family: Family::Clique,
                k: 4
            }
        );
        assert!(parse_grid("cycle").is_err());
        assert!(parse_grid("cycle:5-3").is_err());
        assert_eq!(parse_list::<u64>("0,1, 2").unwrap(), vec![0, 1, 2]);
    }
}
