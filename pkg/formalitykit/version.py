TOOL_NAME = 'formalitykit'
__version__ = '0.1.0'
