use std::path::PathBuf;
use std::str::FromStr;

use exposed_maps::antisym::random_antisymmetric_unitary;
use exposed_maps::io::read_matrix;
use exposed_maps::numlin::seeded_rng;
use exposed_maps::posmap::{breuer_hall, reduction_map, robertson_map, transpose_map, LinearMap};
use exposed_maps::{Error, MapRep, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapSpec {
    Transpose,
    Reduction,
    Robertson,
    /// Φ_U with U = V·U₀·Vᵗ, V Haar-random from the seed.
    BreuerHall,
    File(PathBuf),
}

impl FromStr for MapSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "transpose" => Ok(MapSpec::Transpose),
            "reduction" => Ok(MapSpec::Reduction),
            "robertson" => Ok(MapSpec::Robertson),
            "breuer-hall" => Ok(MapSpec::BreuerHall),
            _ => match s.strip_prefix("file:") {
                Some(p) if !p.is_empty() => Ok(MapSpec::File(PathBuf::from(p))),
                _ => Err(format!(
                    "unknown map {s:?}; expected transpose, reduction, robertson, breuer-hall or file:<path>"
                )),
            },
        }
    }
}

/// How a matrix file is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum MatrixForm {
    #[default]
    Superop,
    Choi,
}

impl MapSpec {
    /// Builds the map. `n` is ignored for robertson (always 4) and file maps.
    pub fn build(&self, n: usize, seed: u64, form: MatrixForm) -> Result<MapRep> {
        match self {
            MapSpec::Transpose => transpose_map(n),
            MapSpec::Reduction => reduction_map(n),
            MapSpec::Robertson => Ok(robertson_map()),
            MapSpec::BreuerHall => {
                let u = random_antisymmetric_unitary::<f64, _>(&mut seeded_rng(seed), n)?;
                Ok(breuer_hall(&u)?.renamed(format!("breuer-hall(n={n},seed={seed})")))
            }
            MapSpec::File(path) => {
                let m = read_matrix(path)?;
                let name = format!("file:{}", path.display());
                match form {
                    MatrixForm::Superop => LinearMap::from_superop(name, m),
                    MatrixForm::Choi => LinearMap::from_choi(name, &m),
                }
            }
        }
    }

    pub fn needs_even_n(&self) -> bool {
        matches!(self, MapSpec::BreuerHall)
    }
}

pub fn parse_map(s: &str) -> Result<MapSpec> {
    s.parse().map_err(Error::InvalidArgument)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(parse_map("robertson").unwrap(), MapSpec::Robertson);
        assert_eq!(parse_map("file:/tmp/x.json").unwrap(), MapSpec::File("/tmp/x.json".into()));
        assert!(parse_map("file:").is_err());
        assert!(parse_map("choi").is_err());
    }

    #[test]
    fn breuer_hall_is_seeded() {
        let a = MapSpec::BreuerHall.build(4, 3, MatrixForm::Superop).unwrap();
        let b = MapSpec::BreuerHall.build(4, 3, MatrixForm::Superop).unwrap();
        assert_eq!(a.superop(), b.superop());
        assert!(MapSpec::BreuerHall.build(5, 3, MatrixForm::Superop).is_err());
    }
}
