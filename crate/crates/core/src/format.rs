//! Text and JSON forms of morphisms.
//!
//! Text: `sigma;a->image;...`, e.g. `3;0->02;1->101;2->102`. Every letter of
//! the alphabet gets exactly one rule, in any order. For `sigma > 10` images
//! are comma-separated integers: `11;0->0,10;1->1;...`.
//!
//! JSON: `{"sigma":3,"images":["02","101","102"]}` with images encoded the
//! same way.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::{parse_letter, Morphism, Word};

/// Parses the text form.
pub fn parse_text(text: &str) -> Result<Morphism> {
    let mut parts = text.trim().split(';');
    let head = parts.next().unwrap_or("").trim();
    let sigma: usize = head
        .parse()
        .map_err(|_| Error::Parse(format!("expected alphabet size before the first ';', found {head:?}")))?;
    if sigma == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let mut images: Vec<Option<Word>> = vec![None; sigma];
    for rule in parts {
        let rule = rule.trim();
        if rule.is_empty() {
            continue;
        }
        let (letter, image) =
            rule.split_once("->").ok_or_else(|| Error::Parse(format!("rule {rule:?} is not of the form a->word")))?;
        let letter = parse_letter(letter.trim(), sigma)?;
        let slot = &mut images[letter as usize];
        if slot.is_some() {
            return Err(Error::Parse(format!("letter {letter} has more than one rule")));
        }
        *slot = Some(Word::decode(image, sigma)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(a, w)| w.ok_or_else(|| Error::Parse(format!("no rule for letter {a}"))))
        .collect::<Result<Vec<_>>>()?;
    Morphism::new(images)
}

/// The text form, rules in letter order.
pub fn to_text(morphism: &Morphism) -> String {
    let sigma = morphism.sigma();
    let mut out = sigma.to_string();
    for (a, image) in morphism.images().iter().enumerate() {
        out.push_str(&format!(";{a}->{}", image.encode(sigma)));
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismJson {
    sigma: usize,
    images: Vec<String>,
}

/// Parses the JSON form.
pub fn parse_json(text: &str) -> Result<Morphism> {
    let raw: MorphismJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    from_json(raw)
}

fn from_json(raw: MorphismJson) -> Result<Morphism> {
    if raw.sigma == 0 {
        return Err(Error::EmptyAlphabet);
    }
    if raw.images.len() != raw.sigma {
        return Err(Error::Parse(format!("sigma is {} but {} images were given", raw.sigma, raw.images.len())));
    }
    let images = raw.images.iter().map(|s| Word::decode(s, raw.sigma)).collect::<Result<Vec<_>>>()?;
    Morphism::new(images)
}

/// The JSON form.
pub fn to_json(morphism: &Morphism) -> String {
    serde_json::to_string(&json_form(morphism)).expect("plain struct serializes")
}

fn json_form(morphism: &Morphism) -> MorphismJson {
    let sigma = morphism.sigma();
    MorphismJson { sigma, images: morphism.images().iter().map(|w| w.encode(sigma)).collect() }
}

/// Parses either form, choosing JSON when the text starts with `{`.
pub fn parse_morphism(text: &str) -> Result<Morphism> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

impl FromStr for Morphism {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_morphism(s)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_text(self))
    }
}

impl Serialize for Morphism {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        json_form(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Morphism {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MorphismJson::deserialize(deserializer)?;
        from_json(raw).map_err(serde::de::Error::custom)
    }
}
