"""Version information for phantomqec package."""

__version__ = '0.4.0'
__version_info__ = tuple(int(i) for i in __version__.split('.'))

__title__ = 'phantomqec'
__description__ = 'Construction, enumeration, SAT discovery and compilation of phantom quantum codes'
__url__ = 'https://github.com/yourusername/phantomqec'
__author__ = 'phantomqec Contributors'
__author_email__ = 'your.email@example.com'
__license__ = 'MIT'
__copyright__ = 'Copyright 2025 phantomqec Contributors'
