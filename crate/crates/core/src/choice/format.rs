//! JSON and CSV encodings of choice functions.
//!
//! JSON: `{"options": [...], "choices": {"<menu key>": "<option>", ...}}`.
//! CSV: header `menu,choice`, one row per menu. CSV carries no option list,
//! so the ground set is read off the singleton rows in row order.
//!
//! Both serializers emit menus in ascending bit order, so the output of
//! [`serialize_choice_function`] parses back to an identical function and
//! reserializes to identical bytes.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::de::{MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{all_menus, ChoiceFunction, GroundSet};
use crate::error::{Error, Result};

pub const CANONICAL_CSV_HEADER: [&str; 2] = ["menu", "choice"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChoiceFormat {
    Json,
    Csv,
}

impl ChoiceFormat {
    /// Guess from a file extension; anything but `.csv` is JSON.
    pub fn from_path(path: &std::path::Path) -> ChoiceFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => ChoiceFormat::Csv,
            _ => ChoiceFormat::Json,
        }
    }
}

impl FromStr for ChoiceFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ChoiceFormat::Json),
            "csv" => Ok(ChoiceFormat::Csv),
            other => Err(Error::Malformed(format!("unknown format `{other}`"))),
        }
    }
}

pub fn parse_choice_function(text: &[u8], format: ChoiceFormat) -> Result<ChoiceFunction> {
    match format {
        ChoiceFormat::Json => parse_json(text),
        ChoiceFormat::Csv => parse_csv(text),
    }
}

pub fn serialize_choice_function(cf: &ChoiceFunction, format: ChoiceFormat) -> Result<String> {
    match format {
        ChoiceFormat::Json => {
            let mut s = serde_json::to_string_pretty(&JsonChoiceFile::from(cf))?;
            s.push('\n');
            Ok(s)
        }
        ChoiceFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CANONICAL_CSV_HEADER)?;
            let g = cf.ground();
            for (menu, x) in cf.iter() {
                w.write_record([g.menu_key(menu).as_str(), g.name(x)])?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::Io(e.into_error()))?;
            String::from_utf8(bytes).map_err(|e| Error::Malformed(e.to_string()))
        }
    }
}

fn parse_json(text: &[u8]) -> Result<ChoiceFunction> {
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        options: Vec<String>,
        choices: Entries,
    }
    let raw: Raw = serde_json::from_slice(text)?;
    let ground = Arc::new(GroundSet::new(raw.options)?);
    assemble(ground, raw.choices.0)
}

fn parse_csv(text: &[u8]) -> Result<ChoiceFunction> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text);
    let header = reader.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != CANONICAL_CSV_HEADER {
        return Err(Error::Malformed(format!(
            "expected header `menu,choice`, found `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut entries = Vec::new();
    for record in reader.records() {
        let record = record?;
        if record.len() != 2 {
            return Err(Error::Malformed(format!("row has {} fields", record.len())));
        }
        entries.push((record[0].to_string(), record[1].to_string()));
    }
    let options: Vec<String> = entries
        .iter()
        .filter(|(k, _)| !k.is_empty() && !k.contains(super::MENU_KEY_SEPARATOR))
        .map(|(k, _)| k.clone())
        .collect();
    let ground = Arc::new(GroundSet::new(options)?);
    assemble(ground, entries)
}

fn assemble(ground: Arc<GroundSet>, entries: Vec<(String, String)>) -> Result<ChoiceFunction> {
    let n = ground.len();
    let mut choices = vec![u8::MAX; 1 << n];
    for (key, choice) in &entries {
        let menu = ground.parse_menu_key(key)?;
        let x = ground.lookup(choice)?;
        if !menu.contains(x) {
            return Err(Error::ChoiceOutsideMenu {
                menu: ground.menu_key(menu),
                choice: choice.clone(),
            });
        }
        let slot = &mut choices[menu.bits() as usize];
        if *slot != u8::MAX {
            return Err(Error::DuplicateMenu(ground.menu_key(menu)));
        }
        *slot = x as u8;
    }
    if let Some(missing) = all_menus(n).find(|m| choices[m.bits() as usize] == u8::MAX) {
        return Err(Error::MissingMenu(ground.menu_key(missing)));
    }
    Ok(ChoiceFunction::from_raw(ground, choices))
}

/// Map entries in document order, duplicates kept.
struct Entries(Vec<(String, String)>);

impl<'de> Deserialize<'de> for Entries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct EntriesVisitor;

        impl<'de> Visitor<'de> for EntriesVisitor {
            type Value = Entries;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from menu keys to chosen options")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Entries, A::Error> {
                let mut out = Vec::with_capacity(map.size_hint().unwrap_or(0));
                while let Some((k, v)) = map.next_entry::<String, String>()? {
                    out.push((k, v));
                }
                Ok(Entries(out))
            }
        }

        deserializer.deserialize_map(EntriesVisitor)
    }
}

#[derive(Serialize)]
struct JsonChoiceFile<'a> {
    options: &'a [String],
    choices: OrderedChoices<'a>,
}

impl<'a> From<&'a ChoiceFunction> for JsonChoiceFile<'a> {
    fn from(cf: &'a ChoiceFunction) -> Self {
        JsonChoiceFile {
            options: cf.ground().options(),
            choices: OrderedChoices(cf),
        }
    }
}

struct OrderedChoices<'a>(&'a ChoiceFunction);

impl Serialize for OrderedChoices<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let cf = self.0;
        let g = cf.ground();
        let mut map = serializer.serialize_map(Some((1 << g.len()) - 1))?;
        for (menu, x) in cf.iter() {
            map.serialize_entry(&g.menu_key(menu), g.name(x))?;
        }
        map.end()
    }
}

/// Convenience: choice function from `(menu key, choice)` pairs over a
/// named ground set; every menu must be listed.
pub(crate) fn from_entries(ground: Arc<GroundSet>, entries: &[(&str, &str)]) -> Result<ChoiceFunction> {
    assemble(
        ground,
        entries
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect(),
    )
}
