# Utils package for the delay logistic toolkit
from .errors import ConfigError, OutputError, NumericalError
from .logging_setup import setup_logging
from .file_utils import get_output_directory, ensure_output_directory
from .text_reader import TextReader, text_reader
