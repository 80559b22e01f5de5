//! CoNLL-style column files: one token per line, columns separated by runs
//! of spaces or tabs, sentences separated by blank lines.

use std::io::BufRead;

use thiserror::Error;

use crate::label::normalize_prefix;

pub const DOCSTART: &str = "-DOCSTART-";

#[derive(Debug, Error)]
pub enum ConllError {
    #[error("line {line}: expected {expected} columns, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: label column {column} is out of range for a row with {columns} columns")]
    LabelColumnOutOfRange {
        line: usize,
        column: usize,
        columns: usize,
    },
    #[error("line {line}: input is not valid UTF-8")]
    InvalidUtf8 { line: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Which column holds the label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelColumn {
    #[default]
    Last,
    Index(usize),
}

impl LabelColumn {
    fn resolve(self, columns: usize) -> Option<usize> {
        match self {
            LabelColumn::Last => columns.checked_sub(1),
            LabelColumn::Index(i) => (i < columns).then_some(i),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ReadOptions {
    pub label_column: LabelColumn,
    /// Drop rows whose first column is `-DOCSTART-`.
    pub skip_docstart: bool,
    /// Lines starting with this prefix are ignored.
    pub comment_prefix: Option<String>,
    /// Uppercase label prefixes (`b-org` → `B-org`) while reading.
    pub uppercase_prefixes: bool,
}

/// One sentence. Every row has the same number of columns.
#[derive(Debug, Clone, Eq)]
pub struct Sentence {
    rows: Vec<Vec<String>>,
    // 1-based source lines; not part of equality.
    lines: Vec<usize>,
}

impl PartialEq for Sentence {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl Sentence {
    /// Builds a sentence from rows; `None` if it is empty or ragged.
    pub fn new(rows: Vec<Vec<String>>) -> Option<Self> {
        let width = rows.first()?.len();
        if width == 0 || rows.iter().any(|r| r.len() != width) {
            return None;
        }
        let lines = (1..=rows.len()).collect();
        Some(Sentence { rows, lines })
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn columns(&self) -> usize {
        self.rows[0].len()
    }

    /// Source line of row `i` (1-based), or its position when the sentence
    /// was built in memory.
    pub fn line(&self, i: usize) -> usize {
        self.lines[i]
    }

    /// First column of each row.
    pub fn tokens(&self) -> Vec<&str> {
        self.rows.iter().map(|r| r[0].as_str()).collect()
    }

    pub fn labels(&self, column: LabelColumn) -> Option<Vec<&str>> {
        let c = column.resolve(self.columns())?;
        Some(self.rows.iter().map(|r| r[c].as_str()).collect())
    }

    /// Copy of the sentence with the label column replaced.
    pub fn with_labels<S: AsRef<str>>(&self, column: LabelColumn, labels: &[S]) -> Option<Self> {
        let c = column.resolve(self.columns())?;
        if labels.len() != self.rows.len() {
            return None;
        }
        let rows = self
            .rows
            .iter()
            .zip(labels)
            .map(|(row, l)| {
                let mut row = row.clone();
                row[c] = l.as_ref().to_string();
                row
            })
            .collect();
        Some(Sentence {
            rows,
            lines: self.lines.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub sentences: Vec<Sentence>,
}

struct Builder<'a> {
    options: &'a ReadOptions,
    sentences: Vec<Sentence>,
    rows: Vec<Vec<String>>,
    lines: Vec<usize>,
}

impl Builder<'_> {
    fn row(&mut self, line_no: usize, line: &str) -> Result<(), ConllError> {
        if self
            .options
            .comment_prefix
            .as_deref()
            .is_some_and(|p| line.starts_with(p))
        {
            return Ok(());
        }
        let mut row: Vec<String> = line
            .split([' ', '\t'])
            .filter(|c| !c.is_empty())
            .map(str::to_string)
            .collect();
        if row.is_empty() {
            return self.flush();
        }
        if self.options.skip_docstart && row[0] == DOCSTART {
            return Ok(());
        }
        let label = self.options.label_column.resolve(row.len()).ok_or(
            ConllError::LabelColumnOutOfRange {
                line: line_no,
                column: match self.options.label_column {
                    LabelColumn::Index(i) => i,
                    LabelColumn::Last => 0,
                },
                columns: row.len(),
            },
        )?;
        if let Some(first) = self.rows.first() {
            if first.len() != row.len() {
                return Err(ConllError::RaggedRow {
                    line: line_no,
                    expected: first.len(),
                    found: row.len(),
                });
            }
        }
        if self.options.uppercase_prefixes {
            row[label] = normalize_prefix(&row[label]);
        }
        self.rows.push(row);
        self.lines.push(line_no);
        Ok(())
    }

    fn flush(&mut self) -> Result<(), ConllError> {
        if !self.rows.is_empty() {
            self.sentences.push(Sentence {
                rows: std::mem::take(&mut self.rows),
                lines: std::mem::take(&mut self.lines),
            });
        }
        Ok(())
    }
}

/// Reads a CoNLL document from a byte stream.
pub fn read_conll<R: BufRead>(
    mut reader: R,
    options: &ReadOptions,
) -> Result<Document, ConllError> {
    let mut builder = Builder {
        options,
        sentences: Vec::new(),
        rows: Vec::new(),
        lines: Vec::new(),
    };
    let mut buf = Vec::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        if reader.read_until(b'\n', &mut buf)? == 0 {
            break;
        }
        line_no += 1;
        let mut bytes = buf.as_slice();
        bytes = bytes.strip_suffix(b"\n").unwrap_or(bytes);
        bytes = bytes.strip_suffix(b"\r").unwrap_or(bytes);
        let line =
            std::str::from_utf8(bytes).map_err(|_| ConllError::InvalidUtf8 { line: line_no })?;
        builder.row(line_no, line)?;
    }
    builder.flush()?;
    Ok(Document {
        sentences: builder.sentences,
    })
}

pub fn read_conll_str(text: &str, options: &ReadOptions) -> Result<Document, ConllError> {
    read_conll(text.as_bytes(), options)
}

/// Single space between columns, one blank line between sentences, and a
/// trailing newline. An empty document renders as an empty string.
pub fn write_conll(doc: &Document) -> String {
    let mut out = String::new();
    for (i, sentence) in doc.sentences.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for row in &sentence.rows {
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}
