use serde::{Deserialize, Serialize};

use super::{Channel, KrausForm};
use crate::error::{Error, Result};
use crate::linalg::{BipartiteDims, ComplexMatrix};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KrausTermJson {
    pub c: f64,
    #[serde(rename = "V")]
    pub v: ComplexMatrix,
}

/// Either a Choi matrix with explicit dims, or a Kraus list. Kraus lists
/// without dims are read as acting on a single party (d, 1).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ChannelJson {
    Choi {
        in_dims: BipartiteDims,
        out_dims: BipartiteDims,
        choi: ComplexMatrix,
    },
    Kraus {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        in_dims: Option<BipartiteDims>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        out_dims: Option<BipartiteDims>,
        kraus: Vec<KrausTermJson>,
    },
}

impl TryFrom<ChannelJson> for Channel {
    type Error = Error;
    fn try_from(j: ChannelJson) -> Result<Self> {
        let parse = |e: Error| Error::Parse(e.to_string());
        match j {
            ChannelJson::Choi { in_dims, out_dims, choi } => Channel::from_choi(choi, in_dims, out_dims).map_err(parse),
            ChannelJson::Kraus { in_dims, out_dims, kraus } => {
                let first = kraus.first().ok_or_else(|| Error::Parse("empty Kraus list".into()))?;
                let in_dims = match in_dims {
                    Some(d) => d,
                    None => BipartiteDims::new(first.v.cols(), 1).map_err(parse)?,
                };
                let out_dims = match out_dims {
                    Some(d) => d,
                    None => BipartiteDims::new(first.v.rows(), 1).map_err(parse)?,
                };
                let form = KrausForm::new(
                    kraus.iter().map(|t| t.c).collect(),
                    kraus.into_iter().map(|t| t.v).collect(),
                );
                Channel::from_kraus(&form, in_dims, out_dims).map_err(parse)
            }
        }
    }
}

impl From<Channel> for ChannelJson {
    fn from(ch: Channel) -> Self {
        ChannelJson::Choi { in_dims: ch.in_dims, out_dims: ch.out_dims, choi: ch.choi }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn choi_round_trip() {
        let d = BipartiteDims::new(2, 1).unwrap();
        let ch = Channel::transpose_map(d);
        assert_eq!(Channel::from_json(&ch.to_json()).unwrap(), ch);
    }

    #[test]
    fn kraus_form_without_dims() {
        let s = r#"{"kraus":[{"c":1.0,"V":{"rows":2,"cols":2,"re":[0,1,1,0],"im":[0,0,0,0]}}]}"#;
        let ch = Channel::from_json(s).unwrap();
        assert_eq!(ch.in_dims().total(), 2);
        assert!(ch.is_tp(1e-12));
    }

    #[test]
    fn malformed_inputs_are_parse_errors() {
        for bad in [
            "{",
            r#"{"kraus":[]}"#,
            r#"{"in_dims":[2,2],"out_dims":[2,2],"choi":{"rows":2,"cols":2,"re":[1,0,0,1],"im":[0,0,0,0]}}"#,
            r#"{"in_dims":[0,2],"out_dims":[2,2],"choi":{"rows":1,"cols":1,"re":[1],"im":[0]}}"#,
        ] {
            let err = Channel::from_json(bad).unwrap_err();
            assert!(err.is_parse(), "{bad}: {err}");
        }
    }
}
