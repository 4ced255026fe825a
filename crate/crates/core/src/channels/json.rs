use serde::{Deserialize, Serialize};

use crate::channels::{
    kraus_to_stinespring, params_to_isometry, ChannelParams, ChannelPreset, KrausChannel, StinespringIsometry,
};
use crate::qcore::{matrix_from_json, matrix_to_json, MatrixJson};
use crate::{Error, Result};

/// Wire form of a channel, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ChannelJson {
    Kraus { kraus: Vec<MatrixJson> },
    Stinespring { dim_in: usize, dim_out: usize, dim_env: usize, matrix: MatrixJson },
    Preset { preset: String },
    Params(ChannelParams),
}

/// A channel as read from the command line or a file. Presets are resolved
/// against the input dimension only when applied.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSpec {
    Kraus(KrausChannel),
    Isometry(StinespringIsometry),
    Preset(ChannelPreset),
}

impl ChannelSpec {
    pub fn to_isometry(&self, dim_in: usize) -> Result<StinespringIsometry> {
        let iso = match self {
            ChannelSpec::Kraus(k) => kraus_to_stinespring(k),
            ChannelSpec::Isometry(v) => v.clone(),
            ChannelSpec::Preset(p) => kraus_to_stinespring(&p.to_kraus(dim_in)?),
        };
        if iso.dim_in() != dim_in {
            return Err(Error::DimensionMismatch(format!(
                "channel input dimension {} does not match system dimension {dim_in}",
                iso.dim_in()
            )));
        }
        Ok(iso)
    }

    /// Accepts a preset string or a JSON document.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            Self::try_from(serde_json::from_str::<ChannelJson>(t)?)
        } else {
            Ok(ChannelSpec::Preset(t.parse()?))
        }
    }
}

impl TryFrom<ChannelJson> for ChannelSpec {
    type Error = Error;

    fn try_from(raw: ChannelJson) -> Result<Self> {
        match raw {
            ChannelJson::Kraus { kraus } => {
                let ops = kraus.iter().map(matrix_from_json).collect::<Result<Vec<_>>>()?;
                Ok(ChannelSpec::Kraus(KrausChannel::new(ops)?))
            }
            ChannelJson::Stinespring { dim_in, dim_out, dim_env, matrix } => Ok(ChannelSpec::Isometry(
                StinespringIsometry::new(dim_in, dim_out, dim_env, matrix_from_json(&matrix)?)?,
            )),
            ChannelJson::Preset { preset } => Ok(ChannelSpec::Preset(preset.parse()?)),
            ChannelJson::Params(p) => Ok(ChannelSpec::Isometry(params_to_isometry(&p)?)),
        }
    }
}

impl From<&StinespringIsometry> for ChannelJson {
    fn from(v: &StinespringIsometry) -> Self {
        ChannelJson::Stinespring {
            dim_in: v.dim_in(),
            dim_out: v.dim_out(),
            dim_env: v.dim_env(),
            matrix: matrix_to_json(v.matrix()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let p = ChannelSpec::parse("depolarizing:0.25").unwrap();
        assert_eq!(p, ChannelSpec::Preset(ChannelPreset::Depolarizing(0.25)));
        let p = ChannelSpec::parse(r#"{"kind":"preset","preset":"identity"}"#).unwrap();
        assert_eq!(p.to_isometry(2).unwrap(), StinespringIsometry::identity(2));
        let k = r#"{"kind":"kraus","kraus":[[[[1,0],[0,0]],[[0,0],[1,0]]]]}"#;
        assert!(matches!(ChannelSpec::parse(k).unwrap(), ChannelSpec::Kraus(_)));
        let params = r#"{"kind":"params","dim_in":2,"dim_out":2,"dim_env":1,"theta":[0,0,0.3,0.1]}"#;
        let iso = ChannelSpec::parse(params).unwrap().to_isometry(2).unwrap();
        assert_eq!(iso.dim_env(), 1);
        let back = ChannelSpec::try_from(ChannelJson::from(&iso)).unwrap();
        assert_eq!(back, ChannelSpec::Isometry(iso));
    }

    #[test]
    fn rejects_mismatch() {
        let p = ChannelSpec::parse("identity").unwrap();
        let v = p.to_isometry(3).unwrap();
        assert!(ChannelSpec::Isometry(v).to_isometry(2).is_err());
        assert!(ChannelSpec::parse(r#"{"kind":"bogus"}"#).is_err());
    }
}
