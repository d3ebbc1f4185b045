//! File formats: CSV matrices, JSON documents, binary sample frames.
//!
//! Every writer is atomic: bytes go to a temporary file in the destination
//! directory and land via rename, so a crash never leaves a partial file
//! behind. CSV output is RFC 4180 with LF line endings and a header row;
//! floats print in Rust's shortest round-trip form, so re-ingesting a file
//! reproduces the original values bit for bit.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use nalgebra::DMatrix;
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::Error;
use crate::sampler::Multiweb;
use crate::Result;

/// Writes `bytes` to `path` via a temporary file in the same directory.
pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(d) => tempfile::NamedTempFile::new_in(d)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Serializes `value` as pretty JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| Error::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    bytes.push(b'\n');
    atomic_write(path, &bytes)
}

/// Reads a JSON document, reporting parse failures with line and column.
pub fn read_json_file<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    serde_json::from_str(&text).map_err(|e| Error::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn csv_to_bytes(header: &[String], rows: impl Iterator<Item = Vec<String>>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)
        .map_err(|e| Error::InvalidArgument(format!("CSV write failed: {e}")))?;
    for row in rows {
        if row.len() != header.len() {
            return Err(Error::InvalidArgument(format!(
                "CSV row has {} fields under a {}-column header",
                row.len(),
                header.len()
            )));
        }
        w.write_record(&row)
            .map_err(|e| Error::InvalidArgument(format!("CSV write failed: {e}")))?;
    }
    w.into_inner()
        .map_err(|e| Error::InvalidArgument(format!("CSV write failed: {e}")))
}

/// Writes a header row plus string records.
pub fn write_records_csv(
    path: &Path,
    header: &[String],
    rows: impl Iterator<Item = Vec<String>>,
) -> Result<()> {
    atomic_write(path, &csv_to_bytes(header, rows)?)
}

/// Writes a dense matrix with columns labeled `prefix0, prefix1, ...`.
pub fn write_matrix_csv(path: &Path, prefix: &str, m: &DMatrix<f64>) -> Result<()> {
    let header: Vec<String> = (0..m.ncols()).map(|j| format!("{prefix}{j}")).collect();
    let rows = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)].to_string()).collect());
    write_records_csv(path, &header, rows)
}

/// Reads a matrix written by [`write_matrix_csv`]: header labels plus the
/// float entries, which round-trip bit for bit.
pub fn read_matrix_csv(path: &Path) -> Result<(Vec<String>, DMatrix<f64>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| Error::InvalidArgument(format!("CSV open failed: {e}")))?;
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| Error::InvalidArgument(format!("CSV header read failed: {e}")))?
        .iter()
        .map(str::to_owned)
        .collect();
    let cols = header.len();
    let mut data: Vec<f64> = Vec::new();
    let mut rows = 0usize;
    for record in reader.records() {
        let record = record.map_err(|e| Error::InvalidArgument(format!("CSV read failed: {e}")))?;
        if record.len() != cols {
            return Err(Error::InvalidArgument(format!(
                "CSV row {} has {} fields under a {cols}-column header",
                rows + 2,
                record.len()
            )));
        }
        for field in record.iter() {
            let value: f64 = field.parse().map_err(|_| {
                Error::InvalidArgument(format!("CSV field {field:?} is not a float"))
            })?;
            data.push(value);
        }
        rows += 1;
    }
    Ok((header, DMatrix::from_row_slice(rows, cols, &data)))
}

/// Writes multiweb states as binary frames: a little-endian u64 frame index
/// followed by one little-endian u32 tile index per color.
pub fn write_frames(path: &Path, samples: &[Multiweb]) -> Result<()> {
    let colors = samples.first().map(Multiweb::color_count).unwrap_or(0);
    let mut bytes = Vec::with_capacity(samples.len() * (8 + 4 * colors));
    for (i, s) in samples.iter().enumerate() {
        if s.color_count() != colors {
            return Err(Error::InvalidArgument(
                "all frames must have the same color count".into(),
            ));
        }
        bytes.extend_from_slice(&(i as u64).to_le_bytes());
        for &t in s.assignment() {
            bytes.extend_from_slice(&t.to_le_bytes());
        }
    }
    atomic_write(path, &bytes)
}

/// Reads frames written by [`write_frames`] for a known color count,
/// verifying the frame counters are sequential from zero.
pub fn read_frames(path: &Path, colors: usize) -> Result<Vec<Multiweb>> {
    let mut reader = BufReader::new(File::open(path)?);
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes)?;
    let frame_len = 8 + 4 * colors;
    if bytes.len() % frame_len != 0 {
        return Err(Error::InvalidArgument(format!(
            "frame file length {} is not a multiple of the {frame_len}-byte frame",
            bytes.len()
        )));
    }
    let mut samples = Vec::with_capacity(bytes.len() / frame_len);
    for (i, frame) in bytes.chunks_exact(frame_len).enumerate() {
        let counter = u64::from_le_bytes(frame[..8].try_into().unwrap());
        if counter != i as u64 {
            return Err(Error::InvalidArgument(format!(
                "frame {i} carries counter {counter}; frames must be sequential"
            )));
        }
        let assignment: Vec<u32> = frame[8..]
            .chunks_exact(4)
            .map(|b| u32::from_le_bytes(b.try_into().unwrap()))
            .collect();
        samples.push(Multiweb::new(assignment));
    }
    Ok(samples)
}

/// Buffered writer over an atomic temp file, finalized by [`FrameSink::finish`].
pub struct FrameSink {
    tmp: Option<tempfile::NamedTempFile>,
    writer: Option<BufWriter<File>>,
    path: std::path::PathBuf,
    colors: usize,
    next: u64,
}

impl FrameSink {
    /// Streams frames to `path` without holding them all in memory.
    pub fn create(path: &Path, colors: usize) -> Result<Self> {
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
        let tmp = match dir {
            Some(d) => tempfile::NamedTempFile::new_in(d)?,
            None => tempfile::NamedTempFile::new_in(".")?,
        };
        let writer = BufWriter::new(tmp.reopen()?);
        Ok(FrameSink {
            tmp: Some(tmp),
            writer: Some(writer),
            path: path.to_path_buf(),
            colors,
            next: 0,
        })
    }

    pub fn push(&mut self, sample: &Multiweb) -> Result<()> {
        if sample.color_count() != self.colors {
            return Err(Error::InvalidArgument(
                "all frames must have the same color count".into(),
            ));
        }
        let w = self.writer.as_mut().expect("sink already finished");
        w.write_all(&self.next.to_le_bytes())?;
        for &t in sample.assignment() {
            w.write_all(&t.to_le_bytes())?;
        }
        self.next += 1;
        Ok(())
    }

    /// Flushes and renames the temp file over the destination.
    pub fn finish(mut self) -> Result<u64> {
        let writer = self.writer.take().expect("sink already finished");
        writer
            .into_inner()
            .map_err(|e| Error::Io(e.into_error()))?
            .sync_all()?;
        let tmp = self.tmp.take().expect("sink already finished");
        tmp.persist(&self.path).map_err(|e| Error::Io(e.error))?;
        Ok(self.next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dmatrix;

    fn tempdir() -> tempfile::TempDir {
        tempfile::tempdir().unwrap()
    }

    #[test]
    fn matrix_csv_round_trips_bit_exactly() {
        let dir = tempdir();
        let path = dir.path().join("m.csv");
        let m = dmatrix![
            1.0 / 3.0, -0.0, 1e-300;
            f64::MIN_POSITIVE, 12345.6789e37, -2.5e-17;
        ];
        write_matrix_csv(&path, "t", &m).unwrap();
        let (header, back) = read_matrix_csv(&path).unwrap();
        assert_eq!(header, vec!["t0", "t1", "t2"]);
        assert_eq!(back.nrows(), 2);
        for i in 0..2 {
            for j in 0..3 {
                assert_eq!(m[(i, j)].to_bits(), back[(i, j)].to_bits());
            }
        }
    }

    #[test]
    fn csv_uses_lf_and_header_row() {
        let dir = tempdir();
        let path = dir.path().join("rows.csv");
        write_records_csv(
            &path,
            &["alpha".into(), "value".into()],
            vec![vec!["0.5".into(), "1".into()]].into_iter(),
        )
        .unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text, "alpha,value\n0.5,1\n");
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let dir = tempdir();
        let path = dir.path().join("bad.csv");
        std::fs::write(&path, "a,b\n1,2\n3\n").unwrap();
        assert!(read_matrix_csv(&path).is_err());
    }

    #[test]
    fn atomic_write_replaces_and_leaves_no_temp() {
        let dir = tempdir();
        let path = dir.path().join("out.txt");
        atomic_write(&path, b"first").unwrap();
        atomic_write(&path, b"second").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"second");
        let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(entries.len(), 1);
    }

    #[test]
    fn frames_round_trip_and_validate_counters() {
        let dir = tempdir();
        let path = dir.path().join("samples.bin");
        let samples: Vec<Multiweb> = (0..5)
            .map(|i| Multiweb::new(vec![i, i + 1, 2 * i]))
            .collect();
        write_frames(&path, &samples).unwrap();
        let back = read_frames(&path, 3).unwrap();
        assert_eq!(samples, back);

        // Corrupt the second frame's counter.
        let mut bytes = std::fs::read(&path).unwrap();
        bytes[20] = 9;
        std::fs::write(&path, &bytes).unwrap();
        assert!(read_frames(&path, 3).is_err());

        // Truncate mid-frame.
        let cut = bytes.len() - 3;
        std::fs::write(&path, &bytes[..cut]).unwrap();
        assert!(read_frames(&path, 3).is_err());
    }

    #[test]
    fn frame_sink_streams_identical_bytes() {
        let dir = tempdir();
        let bulk = dir.path().join("bulk.bin");
        let streamed = dir.path().join("streamed.bin");
        let samples: Vec<Multiweb> = (0..7).map(|i| Multiweb::new(vec![i; 4])).collect();
        write_frames(&bulk, &samples).unwrap();
        let mut sink = FrameSink::create(&streamed, 4).unwrap();
        for s in &samples {
            sink.push(s).unwrap();
        }
        assert_eq!(sink.finish().unwrap(), 7);
        assert_eq!(
            std::fs::read(&bulk).unwrap(),
            std::fs::read(&streamed).unwrap()
        );
    }

    #[test]
    fn json_documents_round_trip() {
        let dir = tempdir();
        let path = dir.path().join("meta.json");
        #[derive(Serialize, serde::Deserialize, PartialEq, Debug)]
        struct Meta {
            l: usize,
            tiles: usize,
            order: String,
        }
        let meta = Meta {
            l: 9,
            tiles: 76,
            order: "size-then-lex".into(),
        };
        write_json(&path, &meta).unwrap();
        let back: Meta = read_json_file(&path).unwrap();
        assert_eq!(meta, back);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn json_parse_errors_carry_position() {
        let dir = tempdir();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, "{\n  \"l\": oops\n}\n").unwrap();
        let err = read_json_file::<serde_json::Value>(&path).unwrap_err();
        match err {
            Error::Json { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("expected Json error, got {other:?}"),
        }
    }
}
