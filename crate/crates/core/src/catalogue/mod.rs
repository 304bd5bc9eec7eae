//! Catalogue text I/O, ingestion and the on-disk store.

mod ingest;
mod line;
mod record;
mod store;

pub use ingest::{
    catalogue_files, ingest_catalogue, ingest_entries, split_entries, CatalogueStats, IngestIssue,
    Ingested, InvariantClasses, RawEntry, STAT_INVARIANTS,
};
pub use line::{emit_line, emit_token, parse_line, parse_token, parse_tokens, token_order, LETTER_LIMIT};
pub use record::{CatalogueRecord, PROFILE_LENGTHS, PV_DEPTH};
pub use store::{read_index, write_store, CATALOGUE_FILE, INDEX_FILE};
