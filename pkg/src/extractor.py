"""
Tree Extraction Module
Reads seed trees from edge-list files and corpus directories.
"""

from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union
import logging

from src.errors import MalformedInput
from src.tree_core import OrientedTree, parse_tree, tree_diameter, tree_wiener

logger = logging.getLogger(__name__)

CORPUS_PATTERN = "*.txt"


class TreeReader:
    """
    Reads one oriented tree from a text file ("u v" per line).
    """

    def __init__(self, input_path: Union[str, Path]):
        self.input_path = Path(input_path)
        self.tree: Optional[OrientedTree] = None
        logger.debug(f"TreeReader initialized with input path: {self.input_path}")

    def read(self) -> OrientedTree:
        """
        Parse the file into an OrientedTree.

        Raises:
            FileNotFoundError: If the input file doesn't exist
            MalformedInput: If the path is not a readable UTF-8 text file
            NotATree: If the edges do not form a tree
        """
        if not self.input_path.exists():
            error_msg = f"Tree file not found: {self.input_path}"
            logger.error(error_msg)
            raise FileNotFoundError(error_msg)

        if not self.input_path.is_file():
            error_msg = f"Tree path is not a file: {self.input_path}"
            logger.error(error_msg)
            raise MalformedInput(error_msg)

        try:
            text = self.input_path.read_text(encoding='utf-8')
        except UnicodeDecodeError as e:
            error_msg = f"Tree file is not UTF-8 text: {self.input_path} ({e})"
            logger.error(error_msg)
            raise MalformedInput(error_msg)

        self.tree = parse_tree(text)
        logger.info(f"Read tree {self.input_path.name}: k={self.tree.k}")
        return self.tree

    def get_tree_info(self) -> Dict:
        if self.tree is None:
            return {"k": 0, "message": "No tree read yet"}
        return {
            "file_path": str(self.input_path),
            "k": self.tree.k,
            "edges": [list(e) for e in self.tree.edges],
            "diameter": tree_diameter(self.tree),
            "wiener": tree_wiener(self.tree),
        }


def read_tree_file(path: Union[str, Path]) -> OrientedTree:
    return TreeReader(path).read()


def read_corpus(corpus_dir: Union[str, Path]) -> List[Tuple[str, OrientedTree]]:
    """
    Every *.txt tree in the directory, as (name, tree) sorted by file name.

    Raises:
        FileNotFoundError: If the directory doesn't exist
    """
    directory = Path(corpus_dir)
    if not directory.is_dir():
        error_msg = f"Corpus directory not found: {directory}"
        logger.error(error_msg)
        raise FileNotFoundError(error_msg)

    corpus = [(path.stem, read_tree_file(path)) for path in sorted(directory.glob(CORPUS_PATTERN))]
    logger.info(f"Loaded {len(corpus)} trees from {directory}")
    return corpus
