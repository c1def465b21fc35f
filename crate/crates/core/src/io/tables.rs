use std::path::Path;

use chrono::NaiveDate;

use super::read_file;
use crate::error::{Error, Result};
use crate::model::{
    ensure_unique_ids, Asset, ExclusionCategory, Holding, RebalanceProposal, SatelliteDesign, TierClass, Trade,
};
use crate::replay::RebalanceEvent;

pub const CANDIDATES_HEADER: &str = "id,tier,adv_usd,round_trip_cost_bps,gaer_admissible,exclusion";
pub const PROPOSAL_HEADER: &str = "id,delta_w";
pub const EVENTS_HEADER: &str = "date,id,delta_w,schedule_due,structural_break";
pub const CORE_HEADER: &str = "id,weight";

/// A data row with its 1-based file line number.
struct Row {
    line: u64,
    fields: csv::StringRecord,
}

impl Row {
    fn get(&self, i: usize) -> &str {
        self.fields.get(i).unwrap_or("").trim()
    }
}

fn rows(text: &str, expected: &str, origin: &Path) -> Result<Vec<Row>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    let parse_err = |e: csv::Error| Error::Parse {
        path: origin.to_path_buf(),
        message: e.to_string(),
    };
    let header = reader.headers().map_err(parse_err)?;
    let found = header.iter().collect::<Vec<_>>().join(",");
    if found != expected {
        return Err(Error::BadHeader {
            path: origin.to_path_buf(),
            expected: expected.to_string(),
            found,
        });
    }
    let width = expected.split(',').count();
    let mut out = Vec::new();
    for record in reader.records() {
        let fields = record.map_err(parse_err)?;
        let line = fields.position().map_or(0, |p| p.line());
        if fields.len() != width {
            return Err(row_error(
                origin,
                line,
                format!("expected {width} fields, found {}", fields.len()),
            ));
        }
        out.push(Row { line, fields });
    }
    Ok(out)
}

fn row_error(origin: &Path, line: u64, message: impl Into<String>) -> Error {
    Error::Row {
        path: origin.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn number(row: &Row, i: usize, name: &str, origin: &Path) -> Result<f64> {
    let raw = row.get(i);
    raw.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| row_error(origin, row.line, format!("{name}: `{raw}` is not a finite number")))
}

fn flag(row: &Row, i: usize, name: &str, origin: &Path) -> Result<bool> {
    let raw = row.get(i);
    match raw.to_ascii_lowercase().as_str() {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(row_error(
            origin,
            row.line,
            format!("{name}: `{raw}` is not true or false"),
        )),
    }
}

fn non_empty<'a>(row: &'a Row, i: usize, name: &str, origin: &Path) -> Result<&'a str> {
    let raw = row.get(i);
    if raw.is_empty() {
        Err(row_error(origin, row.line, format!("{name} must be non-empty")))
    } else {
        Ok(raw)
    }
}

pub fn load_candidates(path: &Path) -> Result<Vec<Asset>> {
    parse_candidates(&read_file(path)?, path)
}

/// An empty `round_trip_cost_bps` cell means the sleeve-level cost applies.
pub fn parse_candidates(text: &str, origin: &Path) -> Result<Vec<Asset>> {
    let mut assets = Vec::new();
    for row in rows(text, CANDIDATES_HEADER, origin)? {
        let at = |e: Error| row_error(origin, row.line, e.to_string());
        let id = non_empty(&row, 0, "id", origin)?;
        let tier: TierClass = row.get(1).parse().map_err(at)?;
        let adv = number(&row, 2, "adv_usd", origin)?;
        let cost = match row.get(3) {
            "" => None,
            _ => Some(number(&row, 3, "round_trip_cost_bps", origin)?),
        };
        let gaer = flag(&row, 4, "gaer_admissible", origin)?;
        let exclusion: ExclusionCategory = row.get(5).parse().map_err(at)?;
        let mut asset = Asset::new(id, tier, adv).map_err(at)?;
        if let Some(bps) = cost {
            asset = asset.with_round_trip_cost_bps(bps).map_err(at)?;
        }
        assets.push(asset.with_gaer_admissible(gaer).with_exclusion(exclusion));
    }
    ensure_unique_ids(assets.iter().map(|a| a.id.as_str()))?;
    Ok(assets)
}

pub fn load_proposal(path: &Path) -> Result<Vec<Trade>> {
    parse_proposal(&read_file(path)?, path)
}

pub fn parse_proposal(text: &str, origin: &Path) -> Result<Vec<Trade>> {
    let trades = rows(text, PROPOSAL_HEADER, origin)?
        .iter()
        .map(|row| {
            let id = non_empty(row, 0, "id", origin)?;
            Ok(Trade::new(id, number(row, 1, "delta_w", origin)?))
        })
        .collect::<Result<Vec<_>>>()?;
    ensure_unique_ids(trades.iter().map(|t| t.id.as_str()))?;
    Ok(trades)
}

pub fn load_core(path: &Path) -> Result<Vec<Holding>> {
    parse_core(&read_file(path)?, path)
}

/// Core composition; weights are relative and normalized by the caller.
pub fn parse_core(text: &str, origin: &Path) -> Result<Vec<Holding>> {
    let core = rows(text, CORE_HEADER, origin)?
        .iter()
        .map(|row| {
            let id = non_empty(row, 0, "id", origin)?;
            let w = number(row, 1, "weight", origin)?;
            if w < 0.0 {
                return Err(row_error(origin, row.line, "weight must be >= 0"));
            }
            Ok(Holding::new(id, w))
        })
        .collect::<Result<Vec<_>>>()?;
    ensure_unique_ids(core.iter().map(|h| h.id.as_str()))?;
    Ok(core)
}

pub fn load_events(path: &Path) -> Result<Vec<RebalanceEvent>> {
    parse_events(&read_file(path)?, path)
}

/// Consecutive rows sharing a date form one event and must agree on both
/// flags. A row with an empty id carries flags only, which lets an event
/// declare a window with no trades.
pub fn parse_events(text: &str, origin: &Path) -> Result<Vec<RebalanceEvent>> {
    let mut events: Vec<RebalanceEvent> = Vec::new();
    for row in rows(text, EVENTS_HEADER, origin)? {
        let raw_date = row.get(0);
        let date = NaiveDate::parse_from_str(raw_date, "%Y-%m-%d")
            .map_err(|_| row_error(origin, row.line, format!("date: `{raw_date}` is not YYYY-MM-DD")))?;
        let due = flag(&row, 3, "schedule_due", origin)?;
        let brk = flag(&row, 4, "structural_break", origin)?;
        let trade = match row.get(1) {
            "" => {
                if !row.get(2).is_empty() {
                    return Err(row_error(origin, row.line, "delta_w given without an id"));
                }
                None
            }
            id => Some(Trade::new(id, number(&row, 2, "delta_w", origin)?)),
        };

        let same_date = events.last().is_some_and(|e| e.date == date);
        if !same_date {
            events.push(RebalanceEvent::new(date, RebalanceProposal::new(Vec::new(), due, brk)?));
        }
        let event = events.last_mut().expect("an event was just ensured");
        if event.proposal.schedule_due != due || event.proposal.structural_break != brk {
            return Err(row_error(
                origin,
                row.line,
                format!("flags disagree with earlier rows dated {date}"),
            ));
        }
        if let Some(t) = trade {
            if event.proposal.trades.iter().any(|x| x.id == t.id) {
                return Err(row_error(
                    origin,
                    row.line,
                    format!("duplicate trade for {} on {date}", t.id),
                ));
            }
            event.proposal.trades.push(t);
        }
    }
    Ok(events)
}

pub fn load_design(path: &Path) -> Result<SatelliteDesign> {
    let text = read_file(path)?;
    let design: SatelliteDesign = serde_json::from_str(&text).map_err(|e| match e.classify() {
        serde_json::error::Category::Data => Error::Schema {
            path: path.to_path_buf(),
            message: e.to_string(),
        },
        _ => Error::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        },
    })?;
    design.validate()?;
    Ok(design)
}
