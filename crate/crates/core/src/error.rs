use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The text is empty after alphabet mapping.
    EmptyText,
    /// A byte of the input is not part of the declared alphabet.
    SymbolOutsideAlphabet { offset: usize, byte: u8 },
    /// The alphabet has more symbols than the symbol type can hold.
    AlphabetTooLarge(usize),
    /// A rank, position, shift or pattern index is out of range.
    OutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },
    /// A precondition of an operation does not hold.
    Contract(&'static str),
    /// A construction parameter is invalid.
    Parameter(&'static str),
    /// A wildcard pattern string could not be parsed.
    PatternSyntax { offset: usize, reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyText => write!(f, "text is empty"),
            Error::SymbolOutsideAlphabet { offset, byte } => {
                write!(f, "byte 0x{byte:02x} at offset {offset} is outside the alphabet")
            }
            Error::AlphabetTooLarge(n) => write!(f, "alphabet of {n} symbols is too large"),
            Error::OutOfRange { what, index, bound } => {
                write!(f, "{what} {index} out of range (bound {bound})")
            }
            Error::Contract(msg) => write!(f, "contract violation: {msg}"),
            Error::Parameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::PatternSyntax { offset, reason } => {
                write!(f, "pattern syntax error at offset {offset}: {reason}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn check_range(what: &'static str, index: usize, bound: usize) -> Result<()> {
    if index < bound {
        Ok(())
    } else {
        Err(Error::OutOfRange { what, index, bound })
    }
}
